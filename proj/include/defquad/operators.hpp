#ifndef DEFQUAD_OPERATORS_HPP
#define DEFQUAD_OPERATORS_HPP

#include <complex>
#include <string>
#include <vector>

#include "defquad/deformation.hpp"

namespace defquad {

// Dense complex matrix on the truncated Fock space |0>..|dim-1>.
struct OperatorMatrix {
  int dim = 0;
  std::vector<std::complex<double>> entries;  // row-major, dim*dim
  std::string label;

  std::complex<double>& at(int r, int c) { return entries[static_cast<size_t>(r) * dim + c]; }
  const std::complex<double>& at(int r, int c) const {
    return entries[static_cast<size_t>(r) * dim + c];
  }
};

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix adjoint(const OperatorMatrix& m);
double max_abs_entry(const OperatorMatrix& m, int rows, int cols);

// A: nonzeros only on the first superdiagonal, entry (n-1,n) = sqrt([n]).
OperatorMatrix lowering_matrix(const DeformationSpec& spec, int dim);
// A^dagger = conjugate transpose of the lowering matrix.
OperatorMatrix raising_matrix(const DeformationSpec& spec, int dim);
// N = diag([0..dim-1]); equals raising*lowering entry-for-entry.
OperatorMatrix number_matrix(const DeformationSpec& spec, int dim);

// X_theta = (sqrt(1+Q)/2) (A e^{-i theta} + A^dagger e^{i theta}).
// Hermitian tridiagonal by construction; theta=0 gives X, theta=pi/2 gives P.
OperatorMatrix quadrature_matrix(const DeformationSpec& spec, int dim, double theta);

// max |A A^d - Q A^d A - rhs| over the top-left (dim-1)x(dim-1) block, scaled
// by max(1, |rhs|max). rhs = I (harmonic, math) or diag(q^-n) (physics, (p,q));
// the last row/column is excluded because truncation corrupts it.
double q_commutator_residual(const DeformationSpec& spec, int dim);

// Both sides of the deformed [X,P] relation as matrices, compared on the
// top-left (dim-2)x(dim-2) block (X^2, P^2 reach two levels up); scaled as above.
double xp_commutator_residual(const DeformationSpec& spec, int dim);

}  // namespace defquad

#endif
