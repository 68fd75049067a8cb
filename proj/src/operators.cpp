#include "defquad/operators.hpp"

#include <cmath>
#include <complex>

namespace defquad {

namespace {

OperatorMatrix zero_matrix(int dim, std::string label) {
  OperatorMatrix m;
  m.dim = dim;
  m.entries.assign(static_cast<size_t>(dim) * dim, {0.0, 0.0});
  m.label = std::move(label);
  return m;
}

void require_dim(int dim, int min, const char* what) {
  if (dim < min)
    throw DomainError(std::string(what) + " requires dim >= " + std::to_string(min));
}

}  // namespace

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix c = zero_matrix(a.dim, a.label + "*" + b.label);
  for (int i = 0; i < a.dim; ++i)
    for (int k = 0; k < a.dim; ++k) {
      const std::complex<double> aik = a.at(i, k);
      if (aik == std::complex<double>(0.0, 0.0)) continue;
      for (int j = 0; j < a.dim; ++j) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

OperatorMatrix adjoint(const OperatorMatrix& m) {
  OperatorMatrix a = zero_matrix(m.dim, m.label + "^dag");
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) a.at(i, j) = std::conj(m.at(j, i));
  return a;
}

double max_abs_entry(const OperatorMatrix& m, int rows, int cols) {
  double mx = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) mx = std::max(mx, std::abs(m.at(i, j)));
  return mx;
}

OperatorMatrix lowering_matrix(const DeformationSpec& spec, int dim) {
  require_dim(dim, 2, "lowering_matrix");
  const BracketSequence seq = bracket_sequence(spec, dim - 1);
  OperatorMatrix m = zero_matrix(dim, "A");
  for (int n = 1; n < dim; ++n)
    m.at(n - 1, n) = std::sqrt(seq.values[static_cast<size_t>(n)]);
  return m;
}

OperatorMatrix raising_matrix(const DeformationSpec& spec, int dim) {
  OperatorMatrix m = adjoint(lowering_matrix(spec, dim));
  m.label = "A^dag";
  return m;
}

OperatorMatrix number_matrix(const DeformationSpec& spec, int dim) {
  require_dim(dim, 2, "number_matrix");
  // diag([n]) with each entry the exact square of the ladder matrix element,
  // so raising*lowering - number_matrix is identically zero.
  const BracketSequence seq = bracket_sequence(spec, dim - 1);
  OperatorMatrix m = zero_matrix(dim, "N");
  for (int n = 1; n < dim; ++n) {
    const double r = std::sqrt(seq.values[static_cast<size_t>(n)]);
    m.at(n, n) = r * r;
  }
  return m;
}

OperatorMatrix quadrature_matrix(const DeformationSpec& spec, int dim, double theta) {
  require_dim(dim, 2, "quadrature_matrix");
  const BracketSequence seq = bracket_sequence(spec, dim - 1);
  const std::complex<double> phase(std::cos(theta), -std::sin(theta));  // e^{-i theta}
  OperatorMatrix m = zero_matrix(dim, "X_theta");
  for (int n = 1; n < dim; ++n) {
    const double b = seq.offdiag[static_cast<size_t>(n) - 1];  // (sqrt(1+Q)/2) sqrt([n])
    m.at(n - 1, n) = b * phase;
    m.at(n, n - 1) = b * std::conj(phase);  // Hermitian by construction
  }
  return m;
}

double q_commutator_residual(const DeformationSpec& spec, int dim) {
  require_dim(dim, 3, "q_commutator_residual");
  validate(spec);
  const double Q = deformation_Q(spec);
  const OperatorMatrix low = lowering_matrix(spec, dim);
  const OperatorMatrix rai = raising_matrix(spec, dim);
  const OperatorMatrix lhs_a = low * rai;
  const OperatorMatrix lhs_b = rai * low;

  OperatorMatrix rhs = zero_matrix(dim, "rhs");
  const bool identity_rhs =
      spec.kind == DeformationKind::Harmonic || spec.kind == DeformationKind::MathQ;
  for (int n = 0; n < dim; ++n)
    rhs.at(n, n) = identity_rhs ? 1.0 : std::pow(spec.q, static_cast<double>(-n));

  OperatorMatrix m = zero_matrix(dim, "resid");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      m.at(i, j) = lhs_a.at(i, j) - Q * lhs_b.at(i, j) - rhs.at(i, j);

  const int safe = dim - 1;  // truncation corrupts the last row/column
  // relative residual: the cancellation scale is the largest operand entry
  double scale = std::max(1.0, max_abs_entry(rhs, safe, safe));
  scale = std::max(scale, max_abs_entry(lhs_a, safe, safe));
  scale = std::max(scale, Q * max_abs_entry(lhs_b, safe, safe));
  return max_abs_entry(m, safe, safe) / scale;
}

double xp_commutator_residual(const DeformationSpec& spec, int dim) {
  require_dim(dim, 4, "xp_commutator_residual");
  validate(spec);
  const double Q = deformation_Q(spec);
  const OperatorMatrix x = quadrature_matrix(spec, dim, 0.0);
  const OperatorMatrix p = quadrature_matrix(spec, dim, 1.5707963267948966);

  const OperatorMatrix xp = x * p;
  const OperatorMatrix px = p * x;

  // rhs = i( diag([n+1]) - Q diag([n]) - (1-Q)/(1+Q) (X^2 + P^2) )
  const BracketSequence seq = bracket_sequence(spec, dim);
  const OperatorMatrix x2 = x * x;
  const OperatorMatrix p2 = p * p;
  const double c = (1.0 - Q) / (1.0 + Q);
  const std::complex<double> iu(0.0, 1.0);

  OperatorMatrix rhs = zero_matrix(dim, "rhs");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::complex<double> v = -c * (x2.at(i, j) + p2.at(i, j));
      if (i == j) v += seq.values[static_cast<size_t>(i) + 1] - Q * seq.values[static_cast<size_t>(i)];
      rhs.at(i, j) = iu * v;
    }

  OperatorMatrix m = zero_matrix(dim, "resid");
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.at(i, j) = xp.at(i, j) - px.at(i, j) - rhs.at(i, j);

  const int safe = dim - 2;  // X^2, P^2 reach two levels past the truncation edge
  double scale = std::max(1.0, max_abs_entry(rhs, safe, safe));
  scale = std::max(scale, max_abs_entry(xp, safe, safe));
  scale = std::max(scale, max_abs_entry(px, safe, safe));
  return max_abs_entry(m, safe, safe) / scale;
}

}  // namespace defquad
