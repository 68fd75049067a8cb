#include "defquad/wavefunction.hpp"

#include <cmath>
#include <complex>

#include "defquad/operators.hpp"
#include "defquad/polynomials.hpp"

namespace defquad {

namespace {

std::complex<double> phase_factor(int level, double theta) {
  const double a = -static_cast<double>(level) * theta;
  return {std::cos(a), std::sin(a)};
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (size_t i = 1; i < x.size(); ++i) s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
  return s;
}

// J_n at each live measure node (w > 0); dead nodes contribute < 1e-290 to
// any moment and are skipped.
std::vector<double> poly_at_nodes(const DeformationSpec& spec, const DiscreteMeasure& dm,
                                  int order, std::vector<size_t>& live) {
  live.clear();
  std::vector<double> pts;
  for (size_t k = 0; k < dm.nodes.size(); ++k)
    if (dm.weights[k] > 0.0) {
      live.push_back(k);
      pts.push_back(dm.nodes[k]);
    }
  std::vector<double> vals(live.size() * static_cast<size_t>(order + 1));
  if (pts.empty()) return vals;
  // nodes are ascending, so pts is strictly increasing
  const std::vector<PolynomialEvaluation> evs = eval_grid(spec, pts, order);
  for (size_t i = 0; i < live.size(); ++i) {
    if (evs[i].overflow_at && *evs[i].overflow_at <= order)
      throw OverflowError("polynomial evaluation overflowed at a live quadrature node");
    for (int n = 0; n <= order; ++n)
      vals[static_cast<size_t>(n) * live.size() + i] = evs[i].values[static_cast<size_t>(n)];
  }
  return vals;
}

}  // namespace

WavefunctionSample ground_wavefunction(const DeformationSpec& spec,
                                       const std::vector<double>& grid, int levels) {
  const DensityEstimate de =
      ground_density(spec, levels, grid, DensityMethod::Stieltjes, 0.0);
  WavefunctionSample ws;
  ws.spec = spec;
  ws.grid = grid;
  ws.level = 0;
  ws.theta = 0.0;
  ws.levels = levels;
  ws.values.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    ws.values[i] = std::sqrt(std::max(0.0, de.density[i]));
  return ws;
}

WavefunctionSample state_wavefunction(const DeformationSpec& spec, int level, double theta,
                                      const std::vector<double>& grid, int levels) {
  if (level < 0) throw DomainError("state level must be nonnegative");
  WavefunctionSample ws = ground_wavefunction(spec, grid, levels);
  ws.level = level;
  ws.theta = theta;
  if (level == 0) return ws;
  const std::vector<PolynomialEvaluation> evs = eval_grid(spec, grid, level);
  const std::complex<double> ph = phase_factor(level, theta);
  for (size_t i = 0; i < grid.size(); ++i) {
    if (evs[i].overflow_at && *evs[i].overflow_at <= level)
      throw OverflowError("polynomial order " + std::to_string(level) +
                          " overflowed inside the requested grid");
    ws.values[i] *= ph * evs[i].values[static_cast<size_t>(level)];
  }
  return ws;
}

ProbabilityDensity probability_density(const DeformationSpec& spec, int level,
                                       const std::vector<double>& grid, int levels,
                                       DensityMethod method, double eta) {
  if (level < 0) throw DomainError("state level must be nonnegative");
  if (eta <= 0.0) eta = default_eta(spec, levels, method);
  ProbabilityDensity pd;
  pd.grid = grid;
  pd.density.assign(grid.size(), 0.0);

  if (method == DensityMethod::Stieltjes) {
    const DensityEstimate de = ground_density(spec, levels, grid, method, eta);
    if (level == 0) {
      pd.density = de.density;
      pd.normalization = 1.0;
    } else {
      const std::vector<PolynomialEvaluation> evs = eval_grid(spec, grid, level);
      for (size_t i = 0; i < grid.size(); ++i) {
        if (evs[i].overflow_at && *evs[i].overflow_at <= level)
          throw OverflowError("polynomial overflow inside the density grid");
        const double j = evs[i].values[static_cast<size_t>(level)];
        pd.density[i] = j * j * de.density[i];
      }
    }
  } else {
    // Gaussian KDE of the node-weighted discrete density {x_k, w_k J_n(x_k)^2}
    const DiscreteMeasure dm = gauss_measure(spec, levels);
    std::vector<size_t> live;
    const std::vector<double> jtab = poly_at_nodes(spec, dm, level, live);
    const double span_lo = grid.front() - 40.0 * eta;
    const double span_hi = grid.back() + 40.0 * eta;
    const double norm = 1.0 / (eta * std::sqrt(2.0 * 3.14159265358979323846));
    for (size_t li = 0; li < live.size(); ++li) {
      const size_t k = live[li];
      const double xk = dm.nodes[k];
      if (xk < span_lo || xk > span_hi) continue;
      const double j = jtab[static_cast<size_t>(level) * live.size() + li];
      const double w = dm.weights[k] * j * j;
      if (!(w > 0.0)) continue;
      for (size_t i = 0; i < grid.size(); ++i) {
        const double t = (grid[i] - xk) / eta;
        pd.density[i] += w * norm * std::exp(-0.5 * t * t);
      }
    }
  }

  const double integral = trapezoid(grid, pd.density);
  if (!(integral > 0.0) || !std::isfinite(integral))
    throw OverflowError("probability density integral is not positive and finite");
  pd.normalization = integral;
  for (double& d : pd.density) d /= integral;
  return pd;
}

double normalization(const DeformationSpec& spec, int level, int levels) {
  if (!(level >= 0 && 2 * level < levels))
    throw DomainError("normalization requires 0 <= n < N/2");
  const DiscreteMeasure dm = gauss_measure(spec, levels);
  std::vector<size_t> live;
  const std::vector<double> jtab = poly_at_nodes(spec, dm, level, live);
  double s = 0.0;
  for (size_t li = 0; li < live.size(); ++li) {
    const double j = jtab[static_cast<size_t>(level) * live.size() + li];
    s += dm.weights[live[li]] * j * j;
  }
  return s;
}

std::vector<double> orthonormality_matrix(const DeformationSpec& spec, int nmax, int levels) {
  if (!(nmax >= 0 && 2 * nmax < levels))
    throw DomainError("orthonormality_matrix requires 0 <= nmax < N/2");
  const DiscreteMeasure dm = gauss_measure(spec, levels);
  std::vector<size_t> live;
  const std::vector<double> jtab = poly_at_nodes(spec, dm, nmax, live);
  const size_t d = static_cast<size_t>(nmax) + 1;
  std::vector<double> gram(d * d, 0.0);
  for (size_t li = 0; li < live.size(); ++li) {
    const double w = dm.weights[live[li]];
    for (size_t m = 0; m < d; ++m) {
      const double jm = jtab[m * live.size() + li];
      for (size_t n = m; n < d; ++n)
        gram[m * d + n] += w * jm * jtab[n * live.size() + li];
    }
  }
  for (size_t m = 0; m < d; ++m)
    for (size_t n = 0; n < m; ++n) gram[m * d + n] = gram[n * d + m];
  return gram;
}

std::vector<std::complex<double>> eigenstate_coefficients(const DeformationSpec& spec,
                                                          double x, double theta, int levels) {
  if (levels < 2) throw DomainError("eigenstate_coefficients requires N >= 2");
  const double psi0 = std::sqrt(std::max(0.0, stieltjes_density(spec, levels, x, 1e-3)));
  const PolynomialEvaluation ev = eval_all(spec, x, levels - 1);
  std::vector<std::complex<double>> c(static_cast<size_t>(levels), {0.0, 0.0});
  for (int n = 0; n < levels; ++n) {
    if (ev.overflow_at && *ev.overflow_at <= n) break;
    const double a = static_cast<double>(n) * theta;  // e^{+i n theta}
    c[static_cast<size_t>(n)] =
        psi0 * ev.values[static_cast<size_t>(n)] * std::complex<double>(std::cos(a), std::sin(a));
  }
  return c;
}

double eigenstate_residual(const DeformationSpec& spec, double x, double theta, int levels) {
  if (levels < 2) throw DomainError("eigenstate_residual requires N >= 2");
  // Psi_0 is a positive scalar, so the unit-normalized coefficient vector is
  // the normalized phase-dressed J-vector; building it directly avoids the
  // underflow of Psi_0 at far-out nodes.
  const PolynomialEvaluation ev = eval_all(spec, x, levels - 1);
  if (ev.overflow_at)
    throw OverflowError("polynomial overflow while assembling the eigenstate vector");
  double norm2 = 0.0;
  for (double v : ev.values) norm2 += v * v;
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<std::complex<double>> c(static_cast<size_t>(levels));
  for (int n = 0; n < levels; ++n) {
    const double a = static_cast<double>(n) * theta;
    c[static_cast<size_t>(n)] =
        inv * ev.values[static_cast<size_t>(n)] * std::complex<double>(std::cos(a), std::sin(a));
  }
  const OperatorMatrix xt = quadrature_matrix(spec, levels, theta);
  double worst = 0.0;
  for (int n = 0; n + 1 < levels; ++n) {  // first N-1 components
    std::complex<double> acc = -x * c[static_cast<size_t>(n)];
    for (int m = 0; m < levels; ++m) acc += xt.at(n, m) * c[static_cast<size_t>(m)];
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace defquad
