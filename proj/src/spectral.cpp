#include "defquad/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "defquad/kernels.hpp"

namespace defquad {

namespace {

constexpr double kPivMin = 1e-300;

// --- symmetric tridiagonal spectrum via Sturm bisection -----------------
//
// The matrices here can be badly graded (off-diagonals spanning 1..1e55 for
// geometric bracket growth), so everything works to *relative* accuracy per
// eigenvalue: Sturm counts bracket each one, a safeguarded Newton polish on
// the orthonormal-polynomial recurrence finishes it, and weights come from
// the Christoffel sum with base-2 exponent tracking.

struct Tridiag {
  std::vector<double> diag;
  std::vector<double> off;  // size diag.size()-1
};

// number of eigenvalues strictly below x
int negcount(const Tridiag& t, double x) {
  int cnt = 0;
  double d = t.diag[0] - x;
  if (std::fabs(d) <= kPivMin) d = -kPivMin;
  if (d < 0.0) ++cnt;
  for (size_t k = 1; k < t.diag.size(); ++k) {
    d = t.diag[k] - x - t.off[k - 1] * t.off[k - 1] / d;
    if (std::fabs(d) <= kPivMin) d = -kPivMin;
    if (d < 0.0) ++cnt;
  }
  return cnt;
}

// p_N and p_N' at x from the orthonormal recurrence
//   off[n] p_{n+1} = (x - diag[n]) p_n - off[n-1] p_{n-1},
// jointly rescaled to avoid overflow; only the ratio and sign are used.
void char_poly(const Tridiag& t, double x, double& f, double& df) {
  const size_t n = t.diag.size();
  double p0 = 0.0, p1 = 1.0, d0 = 0.0, d1 = 0.0;
  for (size_t k = 0; k < n; ++k) {
    // final step has no matrix off-diagonal; any positive constant keeps the
    // roots and the Newton ratio f/df unchanged
    const double b = (k < t.off.size()) ? t.off[k] : 1.0;
    const double bp = (k == 0) ? 0.0 : t.off[k - 1];
    const double p2 = ((x - t.diag[k]) * p1 - bp * p0) / b;
    const double d2 = (p1 + (x - t.diag[k]) * d1 - bp * d0) / b;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
    const double m = std::max(std::fabs(p1), std::fabs(d1));
    if (m > 1e250) {
      const double s = 1e-250;
      p0 *= s;
      p1 *= s;
      d0 *= s;
      d1 *= s;
    }
  }
  f = p1;
  df = d1;
}

double bisect_one(const Tridiag& t, int index, double lo, double hi, int iter_cap) {
  int used = 0;
  for (; used < iter_cap; ++used) {
    const double width = hi - lo;
    if (width <= 1e-13 * std::max(std::fabs(lo), std::fabs(hi)) || width <= 1e-290) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // float resolution exhausted
    if (negcount(t, mid) >= index + 1)
      hi = mid;
    else
      lo = mid;
  }
  if (used >= iter_cap)
    throw ConvergenceError("tridiagonal bisection did not converge for eigenvalue " +
                           std::to_string(index));
  // safeguarded Newton polish on the characteristic recurrence
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 12; ++it) {
    double f, df;
    char_poly(t, x, f, df);
    if (f == 0.0 || df == 0.0) break;
    const double step = f / df;
    const double xn = x - step;
    if (!(xn > lo && xn < hi)) break;  // leave the safe bracket: stop polishing
    x = xn;
    if (std::fabs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(x) + 1e-300)
      break;
  }
  return x;
}

std::vector<double> tridiag_eigenvalues(const Tridiag& t, int iter_cap) {
  const int n = static_cast<int>(t.diag.size());
  // Gershgorin bounds
  double lo0 = t.diag[0], hi0 = t.diag[0];
  bool zero_diag = true;
  for (int k = 0; k < n; ++k) {
    zero_diag = zero_diag && t.diag[static_cast<size_t>(k)] == 0.0;
    const double left = (k > 0) ? std::fabs(t.off[static_cast<size_t>(k) - 1]) : 0.0;
    const double right = (k + 1 < n) ? std::fabs(t.off[static_cast<size_t>(k)]) : 0.0;
    lo0 = std::min(lo0, t.diag[static_cast<size_t>(k)] - left - right);
    hi0 = std::max(hi0, t.diag[static_cast<size_t>(k)] + left + right);
  }
  const double pad = 1e-8 * std::max(1.0, std::max(std::fabs(lo0), std::fabs(hi0)));
  lo0 -= pad;
  hi0 += pad;

  std::vector<double> ev(static_cast<size_t>(n));
  if (zero_diag) {
    // zero diagonal: the spectrum is exactly symmetric about 0, with 0 itself
    // an eigenvalue when the dimension is odd. Solve the negative half and
    // mirror; this also keeps zero-straddling brackets out of the bisection.
    for (int i = 0; i < n / 2; ++i)
      ev[static_cast<size_t>(i)] = bisect_one(t, i, lo0, 0.0, iter_cap);
    if (n % 2 == 1) ev[static_cast<size_t>(n) / 2] = 0.0;
    for (int i = 0; i < n / 2; ++i)
      ev[static_cast<size_t>(n) - 1 - static_cast<size_t>(i)] = -ev[static_cast<size_t>(i)];
  } else {
    for (int i = 0; i < n; ++i) ev[static_cast<size_t>(i)] = bisect_one(t, i, lo0, hi0, iter_cap);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

// sum_{n<N} p_n(x)^2 as mantissa * 2^exponent (Christoffel denominator).
// Terms are combined in the frame of the larger exponent so the exp2 scale
// factors stay subunity and can never overflow.
void christoffel_sum(const Tridiag& t, double x, double& mant, long& expo) {
  const size_t n = t.diag.size();
  double cur_m = 1.0;
  long cur_e = 0;
  double prev_m = 0.0;
  long prev_e = 0;
  double s_m = 1.0;  // p_0^2
  long s_e = 0;
  for (size_t k = 0; k + 1 < n; ++k) {
    // p_{k+1} = ((x - diag[k]) p_k - off[k-1] p_{k-1}) / off[k]
    const double bp = (k == 0) ? 0.0 : t.off[k - 1];
    const long frame = std::max(cur_e, prev_e);
    const double c = cur_m * std::exp2(static_cast<double>(cur_e - frame));
    const double p = prev_m * std::exp2(static_cast<double>(prev_e - frame));
    double nxt_m = ((x - t.diag[k]) * c - bp * p) / t.off[k];
    long nxt_e = frame;
    if (nxt_m != 0.0) {
      int e2;
      nxt_m = std::frexp(nxt_m, &e2);
      nxt_e += e2;
    }
    prev_m = cur_m;
    prev_e = cur_e;
    cur_m = nxt_m;
    cur_e = nxt_e;
    // accumulate p_{k+1}^2
    if (cur_m != 0.0) {
      const long se2 = 2 * cur_e;
      if (se2 > s_e) {
        s_m = s_m * std::exp2(static_cast<double>(s_e - se2)) + cur_m * cur_m;
        s_e = se2;
      } else {
        s_m += cur_m * cur_m * std::exp2(static_cast<double>(se2 - s_e));
      }
      int e2;
      s_m = std::frexp(s_m, &e2);
      s_e += e2;
    }
  }
  mant = s_m;
  expo = s_e;
}

Tridiag jacobi_tridiag(const JacobiMatrix& jm) {
  Tridiag t;
  t.diag = jm.diagonal;
  t.off = jm.offdiag;
  return t;
}

}  // namespace

JacobiMatrix jacobi_matrix(const DeformationSpec& spec, int levels) {
  if (levels < 1) throw DomainError("jacobi_matrix requires N >= 1");
  JacobiMatrix jm;
  jm.spec = validate(spec);
  jm.dim = levels;
  jm.diagonal.assign(static_cast<size_t>(levels), 0.0);
  if (levels > 1) {
    const BracketSequence seq = bracket_sequence(spec, levels - 1);
    jm.offdiag.assign(seq.offdiag.begin(), seq.offdiag.end());
  }
  return jm;
}

TridiagEigen eig_sym_tridiag(const JacobiMatrix& jm) {
  if (jm.dim < 1) throw DomainError("eig_sym_tridiag requires dim >= 1");
  TridiagEigen out;
  if (jm.dim == 1) {
    out.eigenvalues = {jm.diagonal.empty() ? 0.0 : jm.diagonal[0]};
    out.first_components = {1.0};
    return out;
  }
  const Tridiag t = jacobi_tridiag(jm);
  out.eigenvalues = tridiag_eigenvalues(t, 50 * jm.dim);
  out.first_components.resize(out.eigenvalues.size());
  for (size_t k = 0; k < out.eigenvalues.size(); ++k) {
    double m;
    long e;
    christoffel_sum(t, out.eigenvalues[k], m, e);
    // first component of the normalized eigenvector = 1/sqrt(sum p_n^2)
    out.first_components[k] = std::sqrt(1.0 / m) * std::exp2(-0.5 * static_cast<double>(e));
  }
  return out;
}

DiscreteMeasure gauss_measure(const DeformationSpec& spec, int levels) {
  const JacobiMatrix jm = jacobi_matrix(spec, levels);
  DiscreteMeasure dm;
  if (levels == 1) {
    dm.nodes = {0.0};
    dm.weights = {1.0};
    return dm;
  }
  const Tridiag t = jacobi_tridiag(jm);
  dm.nodes = tridiag_eigenvalues(t, 50 * levels);
  dm.weights.resize(dm.nodes.size());
  for (size_t k = 0; k < dm.nodes.size(); ++k) {
    double m;
    long e;
    christoffel_sum(t, dm.nodes[k], m, e);
    // w_k = mu0 / sum_{n<N} J_n(x_k)^2 with mu0 = 1; underflow leaves 0
    dm.weights[k] = std::ldexp(1.0 / m, static_cast<int>(-std::min<long>(e, 1 << 24)));
  }
  return dm;
}

double stieltjes_density(const DeformationSpec& spec, int levels, double x, double eta) {
  if (!(eta > 0.0)) throw DomainError("stieltjes_density requires eta > 0");
  if (levels < 8) throw DomainError("stieltjes_density requires N >= 8");
  const BracketSequence seq = bracket_sequence(spec, levels);
  std::vector<double> b2(seq.offdiag.size());
  for (size_t i = 0; i < b2.size(); ++i) {
    b2[i] = seq.offdiag[i] * seq.offdiag[i];
    if (!std::isfinite(b2[i]))
      throw OverflowError("squared recurrence coefficient overflows at level " +
                          std::to_string(i + 1));
  }
  double out;
  kernels::stieltjes_grid(std::span<const double>(&x, 1), eta, b2, &out);
  return out;
}

std::string to_string(DensityMethod m) {
  return m == DensityMethod::Stieltjes ? "stieltjes" : "smoothed-gauss";
}

double default_eta(const DeformationSpec& spec, int levels, DensityMethod method) {
  if (method == DensityMethod::Stieltjes) return 1e-3;
  // smoothed-gauss: 2x the measure-weighted median node spacing
  const DiscreteMeasure dm = gauss_measure(spec, levels);
  const size_t n = dm.nodes.size();
  if (n < 2) return 1e-3;
  std::vector<std::pair<double, double>> gaps;  // (gap, weight)
  gaps.reserve(n - 1);
  double total = 0.0;
  for (size_t k = 0; k + 1 < n; ++k) {
    const double w = 0.5 * (dm.weights[k] + dm.weights[k + 1]);
    if (w > 0.0) {
      gaps.emplace_back(dm.nodes[k + 1] - dm.nodes[k], w);
      total += w;
    }
  }
  if (gaps.empty() || total <= 0.0) return 1e-3;
  std::sort(gaps.begin(), gaps.end());
  double acc = 0.0;
  double median = gaps.back().first;
  for (const auto& [g, w] : gaps) {
    acc += w;
    if (acc >= 0.5 * total) {
      median = g;
      break;
    }
  }
  return std::max(1e-3, 2.0 * median);
}

namespace {

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw DomainError("density grids need at least two points");
  for (size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

}  // namespace

DensityEstimate ground_density(const DeformationSpec& spec, int levels,
                               const std::vector<double>& grid, DensityMethod method,
                               double eta) {
  check_grid(grid);
  if (eta <= 0.0) eta = default_eta(spec, levels, method);
  DensityEstimate de;
  de.grid = grid;
  de.method = method;
  de.levels = levels;
  de.eta = eta;
  de.density.assign(grid.size(), 0.0);

  if (method == DensityMethod::Stieltjes) {
    const BracketSequence seq = bracket_sequence(spec, levels);
    std::vector<double> b2(seq.offdiag.size());
    for (size_t i = 0; i < b2.size(); ++i) {
      b2[i] = seq.offdiag[i] * seq.offdiag[i];
      if (!std::isfinite(b2[i]))
        throw OverflowError("squared recurrence coefficient overflows at level " +
                            std::to_string(i + 1));
    }
    kernels::stieltjes_grid(grid, eta, b2, de.density.data());
  } else {
    const DiscreteMeasure dm = gauss_measure(spec, levels);
    const double span_lo = grid.front() - 40.0 * eta;
    const double span_hi = grid.back() + 40.0 * eta;
    const double norm = 1.0 / (eta * std::sqrt(2.0 * 3.14159265358979323846));
    for (size_t k = 0; k < dm.nodes.size(); ++k) {
      const double w = dm.weights[k];
      const double xk = dm.nodes[k];
      if (w <= 0.0 || xk < span_lo || xk > span_hi) continue;
      for (size_t i = 0; i < grid.size(); ++i) {
        const double t = (grid[i] - xk) / eta;
        de.density[i] += w * norm * std::exp(-0.5 * t * t);
      }
    }
  }

  const double integral = trapezoid(grid, de.density);
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw OverflowError("density integral is not positive and finite");
  de.normalization = integral;
  for (double& d : de.density) d /= integral;
  return de;
}

SupportEstimate support_estimate(const DeformationSpec& spec, int levels) {
  if (levels < 8) throw DomainError("support_estimate requires N >= 8");
  const DiscreteMeasure dm = gauss_measure(spec, levels);
  const size_t n = dm.nodes.size();
  SupportEstimate se;
  se.lo = dm.nodes.front() - 3.0 * (dm.nodes[1] - dm.nodes[0]);
  se.hi = dm.nodes.back() + 3.0 * (dm.nodes[n - 1] - dm.nodes[n - 2]);
  switch (validate(spec).kind) {
    case DeformationKind::MathQ:
      se.bounded = true;
      break;
    case DeformationKind::PQ:
      se.bounded = spec.p <= 1.0 && spec.q >= 1.0;  // [n] bounded iff max(p,1/q) <= 1
      break;
    default:
      se.bounded = false;
      break;
  }
  return se;
}

}  // namespace defquad
