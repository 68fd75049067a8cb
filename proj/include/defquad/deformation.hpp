#ifndef DEFQUAD_DEFORMATION_HPP
#define DEFQUAD_DEFORMATION_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "defquad/errors.hpp"

namespace defquad {

// The four oscillator algebras. Harmonic is its own kind rather than a
// q->1 limit so no family evaluates 0/0 at its boundary.
enum class DeformationKind { Harmonic, MathQ, PhysicsQ, PQ };

struct DeformationSpec {
  DeformationKind kind = DeformationKind::Harmonic;
  double q = 0.0;  // MathQ: 0<q<1, PhysicsQ: q>1, PQ: q>0
  double p = 0.0;  // PQ only: p>0, p*q != 1

  static DeformationSpec harmonic() { return {DeformationKind::Harmonic, 0.0, 0.0}; }
  static DeformationSpec math_q(double q) { return {DeformationKind::MathQ, q, 0.0}; }
  static DeformationSpec physics_q(double q) { return {DeformationKind::PhysicsQ, q, 0.0}; }
  static DeformationSpec pq(double p, double q) { return {DeformationKind::PQ, q, p}; }
};

std::string to_string(const DeformationSpec& spec);

// Throws DomainError naming the violated constraint; returns spec unchanged.
DeformationSpec validate(const DeformationSpec& spec);

// Q = q^2 (math), q (physics), p ((p,q)), 1 (harmonic).
double deformation_Q(const DeformationSpec& spec);

// [n], evaluated by the stable all-positive summation recurrences:
//   math:    [n+1] = 1 + q^2 [n]
//   physics: [n+1] = q [n] + q^-n
//   (p,q):   [n+1] = p [n] + q^-n
// Throws OverflowError once [n] leaves the double range.
double bracket(const DeformationSpec& spec, int n);

// [n]! = [n][n-1]...[1], with [0]! = 1.
double bracket_factorial(const DeformationSpec& spec, int n);

// log([n]!), usable where the factorial itself overflows.
double log_bracket_factorial(const DeformationSpec& spec, int n);

struct BracketSequence {
  DeformationSpec spec;
  std::vector<double> values;   // [0], [1], ..., [N]
  std::vector<double> offdiag;  // b_1..b_N, b_n = (sqrt(1+Q)/2) sqrt([n])
  double Q = 1.0;
};

// Precomputes [0..N] and the recurrence off-diagonals. N >= 1.
BracketSequence bracket_sequence(const DeformationSpec& spec, int levels);

}  // namespace defquad

#endif
