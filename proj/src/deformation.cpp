#include "defquad/deformation.hpp"

#include <cmath>
#include <sstream>

namespace defquad {

std::string to_string(const DeformationSpec& spec) {
  std::ostringstream os;
  switch (spec.kind) {
    case DeformationKind::Harmonic:
      os << "harmonic";
      break;
    case DeformationKind::MathQ:
      os << "mathq(q=" << spec.q << ")";
      break;
    case DeformationKind::PhysicsQ:
      os << "physq(q=" << spec.q << ")";
      break;
    case DeformationKind::PQ:
      os << "pq(p=" << spec.p << ",q=" << spec.q << ")";
      break;
  }
  return os.str();
}

DeformationSpec validate(const DeformationSpec& spec) {
  switch (spec.kind) {
    case DeformationKind::Harmonic:
      return spec;
    case DeformationKind::MathQ:
      if (!(spec.q > 0.0 && spec.q < 1.0))
        throw DomainError("math-type deformation requires 0 < q < 1, got q=" +
                          std::to_string(spec.q));
      return spec;
    case DeformationKind::PhysicsQ:
      if (!(spec.q > 1.0))
        throw DomainError("physics-type deformation requires q > 1, got q=" +
                          std::to_string(spec.q));
      return spec;
    case DeformationKind::PQ:
      if (!(spec.p > 0.0))
        throw DomainError("(p,q) deformation requires p > 0, got p=" + std::to_string(spec.p));
      if (!(spec.q > 0.0))
        throw DomainError("(p,q) deformation requires q > 0, got q=" + std::to_string(spec.q));
      if (spec.p * spec.q == 1.0)
        throw DomainError("(p,q) deformation requires p*q != 1 (the bracket denominator "
                          "1-pq vanishes), got p*q=1");
      return spec;
  }
  throw DomainError("unknown deformation kind");
}

double deformation_Q(const DeformationSpec& spec) {
  switch (spec.kind) {
    case DeformationKind::Harmonic:
      return 1.0;
    case DeformationKind::MathQ:
      return spec.q * spec.q;
    case DeformationKind::PhysicsQ:
      return spec.q;
    case DeformationKind::PQ:
      return spec.p;
  }
  return 1.0;
}

namespace {

// One step of the all-positive-term recurrence: [k+1] from [k].
double bracket_step(const DeformationSpec& spec, double value, int k) {
  switch (spec.kind) {
    case DeformationKind::Harmonic:
      return value + 1.0;
    case DeformationKind::MathQ:
      return 1.0 + spec.q * spec.q * value;
    case DeformationKind::PhysicsQ:
      return spec.q * value + std::pow(spec.q, static_cast<double>(-k));
    case DeformationKind::PQ:
      return spec.p * value + std::pow(spec.q, static_cast<double>(-k));
  }
  return 0.0;
}

}  // namespace

double bracket(const DeformationSpec& spec, int n) {
  if (n < 0) throw DomainError("bracket index must be nonnegative");
  double v = 0.0;
  for (int k = 0; k < n; ++k) {
    v = bracket_step(spec, v, k);
    if (!std::isfinite(v))
      throw OverflowError("bracket [" + std::to_string(k + 1) + "] overflows for " +
                          to_string(spec));
  }
  return v;
}

double bracket_factorial(const DeformationSpec& spec, int n) {
  if (n < 0) throw DomainError("bracket factorial index must be nonnegative");
  double fact = 1.0;
  double v = 0.0;
  for (int k = 0; k < n; ++k) {
    v = bracket_step(spec, v, k);
    fact *= v;
    if (!std::isfinite(fact))
      throw OverflowError("bracket factorial [" + std::to_string(n) +
                          "]! overflows for " + to_string(spec) +
                          "; use log_bracket_factorial");
  }
  return fact;
}

double log_bracket_factorial(const DeformationSpec& spec, int n) {
  if (n < 0) throw DomainError("bracket factorial index must be nonnegative");
  double acc = 0.0;
  double v = 0.0;
  for (int k = 0; k < n; ++k) {
    v = bracket_step(spec, v, k);
    if (!std::isfinite(v))
      throw OverflowError("bracket [" + std::to_string(k + 1) + "] overflows for " +
                          to_string(spec));
    acc += std::log(v);
  }
  return acc;
}

BracketSequence bracket_sequence(const DeformationSpec& spec, int levels) {
  if (levels < 1) throw DomainError("bracket_sequence requires N >= 1");
  validate(spec);
  BracketSequence seq;
  seq.spec = spec;
  seq.Q = deformation_Q(spec);
  seq.values.resize(static_cast<size_t>(levels) + 1);
  seq.offdiag.resize(static_cast<size_t>(levels));
  seq.values[0] = 0.0;
  const double half_root = 0.5;  // b_n = 0.5 * sqrt((1+Q) [n])
  double v = 0.0;
  double prev = 0.0;
  for (int k = 0; k < levels; ++k) {
    v = bracket_step(spec, v, k);
    if (!std::isfinite(v))
      throw OverflowError("bracket [" + std::to_string(k + 1) + "] overflows for " +
                          to_string(spec));
    if (!(v > 0.0))
      throw DomainError("bracket [" + std::to_string(k + 1) + "] is not positive for " +
                        to_string(spec));
    // decaying brackets ((p,q) with p < 1 < q) make the forward recurrences
    // minimal-solution unstable; saturation at the double limit is fine
    if (v < prev * (1.0 - 1e-12))
      throw DomainError("bracket sequence decreases at [" + std::to_string(k + 1) + "] for " +
                        to_string(spec) + "; only nondecreasing families are supported");
    prev = v;
    seq.values[static_cast<size_t>(k) + 1] = v;
    seq.offdiag[static_cast<size_t>(k)] = half_root * std::sqrt((1.0 + seq.Q) * v);
  }
  return seq;
}

}  // namespace defquad
