#ifndef DEFQUAD_WAVEFUNCTION_HPP
#define DEFQUAD_WAVEFUNCTION_HPP

#include <complex>
#include <vector>

#include "defquad/deformation.hpp"
#include "defquad/spectral.hpp"

namespace defquad {

struct WavefunctionSample {
  DeformationSpec spec;
  std::vector<double> grid;
  std::vector<std::complex<double>> values;
  int level = 0;
  double theta = 0.0;
  int levels = 0;  // truncation used for Psi_0
};

// Psi_0 = +sqrt(ground density), real and nonnegative (phase convention).
WavefunctionSample ground_wavefunction(const DeformationSpec& spec,
                                       const std::vector<double>& grid, int levels);

// Psi_n(x) = e^{-i n theta} J_n(x) Psi_0(x).
WavefunctionSample state_wavefunction(const DeformationSpec& spec, int level, double theta,
                                      const std::vector<double>& grid, int levels);

struct ProbabilityDensity {
  std::vector<double> grid;
  std::vector<double> density;
  double normalization = 1.0;
};

// |Psi_n|^2 = J_n^2 * w, trapezoid-normalized over the grid. Stieltjes forms
// the pointwise product with the weight estimate; SmoothedGauss smooths the
// node-weighted discrete density {x_k, w_k J_n(x_k)^2}. eta <= 0 = default.
ProbabilityDensity probability_density(const DeformationSpec& spec, int level,
                                       const std::vector<double>& grid, int levels,
                                       DensityMethod method = DensityMethod::Stieltjes,
                                       double eta = 0.0);

// sum_i w_i J_n(x_i)^2 over gauss_measure(spec, levels); 1 by Gauss exactness
// while 2n <= 2*levels - 2.
double normalization(const DeformationSpec& spec, int level, int levels);

// Gram matrix G_{mn} = sum_i w_i J_m(x_i) J_n(x_i), m,n <= nmax (row-major).
std::vector<double> orthonormality_matrix(const DeformationSpec& spec, int nmax, int levels);

// Eq-style eigenstate expansion c_n = conj(Psi_0)(x) J_n(x) e^{i n theta}.
std::vector<std::complex<double>> eigenstate_coefficients(const DeformationSpec& spec,
                                                          double x, double theta, int levels);

// max_n |(X_theta c - x c)_n| over the first levels-1 components with c built
// from the J-vector at x and unit-normalized (the Psi_0 prefactor drops out).
double eigenstate_residual(const DeformationSpec& spec, double x, double theta, int levels);

}  // namespace defquad

#endif
