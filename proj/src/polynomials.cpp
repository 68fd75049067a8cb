#include "defquad/polynomials.hpp"

#include <cmath>

#include "defquad/kernels.hpp"

namespace defquad {

namespace {

constexpr double kOverflowLimit = 1e300;

// Fused per-order coefficients: J_{n+1} = alpha_n x J_n - beta_n J_{n-1}
// with alpha_n = (2/sqrt(1+Q))/sqrt([n+1]), beta_n = sqrt([n])/sqrt([n+1]).
struct RecurrenceCoeffs {
  std::vector<double> alpha;
  std::vector<double> beta;
};

RecurrenceCoeffs recurrence_coeffs(const BracketSequence& seq, int order) {
  RecurrenceCoeffs rc;
  rc.alpha.resize(static_cast<size_t>(order));
  rc.beta.resize(static_cast<size_t>(order));
  const double c = 2.0 / std::sqrt(1.0 + seq.Q);
  for (int n = 0; n < order; ++n) {
    const double rs = 1.0 / std::sqrt(seq.values[static_cast<size_t>(n) + 1]);
    rc.alpha[static_cast<size_t>(n)] = c * rs;
    rc.beta[static_cast<size_t>(n)] = (n == 0) ? 0.0 : std::sqrt(seq.values[static_cast<size_t>(n)]) * rs;
  }
  return rc;
}

std::vector<PolynomialEvaluation> eval_points(const DeformationSpec& spec,
                                              const std::vector<double>& pts, int order) {
  validate(spec);
  if (order < 0) throw DomainError("polynomial order must be nonnegative");
  std::vector<PolynomialEvaluation> result(pts.size());
  if (order == 0) {
    for (size_t i = 0; i < pts.size(); ++i)
      result[i] = {spec, pts[i], {1.0}, std::nullopt};
    return result;
  }
  const BracketSequence seq = bracket_sequence(spec, order);
  const RecurrenceCoeffs rc = recurrence_coeffs(seq, order);

  std::vector<double> table(static_cast<size_t>(order + 1) * pts.size());
  std::vector<int> trip(pts.size());
  kernels::PolyTableArgs args;
  args.x = pts;
  args.alpha = rc.alpha;
  args.beta = rc.beta;
  args.order = order;
  args.limit = kOverflowLimit;
  args.out = table.data();
  args.trip = trip.data();
  kernels::poly_table(args);

  for (size_t i = 0; i < pts.size(); ++i) {
    PolynomialEvaluation& ev = result[i];
    ev.spec = spec;
    ev.x = pts[i];
    const int upto = (trip[i] <= order) ? trip[i] : order + 1;
    ev.values.resize(static_cast<size_t>(upto));
    for (int n = 0; n < upto; ++n) ev.values[static_cast<size_t>(n)] = table[static_cast<size_t>(n) * pts.size() + i];
    if (trip[i] <= order) ev.overflow_at = trip[i];
  }
  return result;
}

}  // namespace

PolynomialEvaluation eval_all(const DeformationSpec& spec, double x, int order) {
  return eval_points(spec, {x}, order)[0];
}

std::vector<PolynomialEvaluation> eval_grid(const DeformationSpec& spec,
                                            const std::vector<double>& grid, int order) {
  if (grid.empty()) throw DomainError("eval_grid requires a nonempty grid");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("eval_grid requires a strictly increasing grid");
  return eval_points(spec, grid, order);
}

double hermite_oracle(int n, double x) {
  if (n == 0) return 1.0;
  double h0 = 1.0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

double chebyshev_u_oracle(int n, double x) {
  if (n == 0) return 1.0;
  double u0 = 1.0;
  double u1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

double j2_closed_form(const DeformationSpec& spec, double x) {
  const double Q = deformation_Q(validate(spec));
  const double b1 = bracket(spec, 1);
  const double fact2 = bracket_factorial(spec, 2);
  return (4.0 * x * x - (1.0 + Q) * b1) / std::sqrt(fact2 * (1.0 + Q) * (1.0 + Q));
}

double j3_closed_form(const DeformationSpec& spec, double x) {
  const double Q = deformation_Q(validate(spec));
  const double b1 = bracket(spec, 1);
  const double b2 = bracket(spec, 2);
  const double fact3 = bracket_factorial(spec, 3);
  const double num = 8.0 * x * x * x - 2.0 * (1.0 + Q) * (b1 + b2) * x;
  return num / std::sqrt(fact3 * (1.0 + Q) * (1.0 + Q) * (1.0 + Q));
}

}  // namespace defquad
