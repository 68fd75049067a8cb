#ifndef DEFQUAD_SPECTRAL_HPP
#define DEFQUAD_SPECTRAL_HPP

#include <string>
#include <vector>

#include "defquad/deformation.hpp"

namespace defquad {

// Truncated Jacobi operator of the J_n recurrence: zero diagonal,
// offdiag b_n = (sqrt(1+Q)/2) sqrt([n]). Equals quadrature_matrix(spec,N,0).
struct JacobiMatrix {
  DeformationSpec spec;
  int dim = 0;
  std::vector<double> diagonal;  // all zeros, kept explicit
  std::vector<double> offdiag;   // b_1..b_{N-1}
};

JacobiMatrix jacobi_matrix(const DeformationSpec& spec, int levels);

struct TridiagEigen {
  std::vector<double> eigenvalues;       // ascending
  std::vector<double> first_components;  // first entry of each normalized eigenvector, >= 0
};

// Symmetric tridiagonal eigensolver: Sturm-count bisection brackets each
// eigenvalue to relative precision, a safeguarded Newton polish on the
// characteristic recurrence finishes it; first components come from the
// Christoffel identity 1/sqrt(sum_n J_n(x_k)^2). Convergence tolerance is
// 1e-14 relative to the matrix scale with an iteration cap of 50*dim per
// eigenvalue (ConvergenceError beyond it).
TridiagEigen eig_sym_tridiag(const JacobiMatrix& jm);

// Gauss nodes (= eigenvalues) and weights (= mu0 * first_components^2,
// evaluated through the Christoffel sum so graded matrices keep relative
// accuracy). Weights sum to 1; true weights below the double range are 0.
struct DiscreteMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;
};

DiscreteMeasure gauss_measure(const DeformationSpec& spec, int levels);

// -Im S(x + i eta)/pi from the terminated backward continued fraction of the
// truncated Jacobi operator; the constant-b square-root terminator at b = b_N
// makes the estimate smooth for eta well below the node spacing.
double stieltjes_density(const DeformationSpec& spec, int levels, double x, double eta);

enum class DensityMethod { Stieltjes, SmoothedGauss };
std::string to_string(DensityMethod m);

struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> density;
  DensityMethod method = DensityMethod::Stieltjes;
  int levels = 0;
  double eta = 0.0;
  double normalization = 1.0;  // factor the raw estimate was divided by
};

// Ground-state probability density |Psi_0|^2 = the orthogonality weight of
// {J_n}. Stieltjes evaluates pointwise then renormalizes the trapezoid
// integral to 1; SmoothedGauss convolves the discrete measure with a
// Gaussian kernel of bandwidth eta and renormalizes. eta <= 0 requests the
// method default (1e-3 for Stieltjes; max(1e-3, 2x weighted median node
// spacing) for SmoothedGauss).
DensityEstimate ground_density(const DeformationSpec& spec, int levels,
                               const std::vector<double>& grid, DensityMethod method,
                               double eta);

double default_eta(const DeformationSpec& spec, int levels, DensityMethod method);

struct SupportEstimate {
  double lo = 0.0;
  double hi = 0.0;
  bool bounded = false;  // sup_n b_n finite (math-type; (p,q) with p<=1<=q)
};

SupportEstimate support_estimate(const DeformationSpec& spec, int levels);

}  // namespace defquad

#endif
