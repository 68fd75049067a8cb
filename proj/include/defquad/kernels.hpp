#ifndef DEFQUAD_KERNELS_HPP
#define DEFQUAD_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string>

namespace defquad::kernels {

// Grid-parallel inner loops. Scalar reference implementations and AVX2+FMA
// variants share these signatures; the active set is picked once at startup
// from CPUID and can be pinned with DEFQUAD_KERNEL=scalar|avx2.

// Orthonormal three-term recurrence over a grid.
//   J_0 = 1,  J_{n+1}(x) = alpha[n]*x*J_n(x) - beta[n]*J_{n-1}(x)
// (beta[0] is ignored; J_1 = alpha[0]*x). Writes a row-major table
// out[n*npts + i] for n = 0..order, i = 0..npts-1. Magnitudes are monitored
// against `limit`; the first order whose |J| exceeds it is recorded per point
// in trip[i] (trip[i] = order+1 when never tripped) and later rows hold 0.
struct PolyTableArgs {
  std::span<const double> x;
  std::span<const double> alpha;  // size order
  std::span<const double> beta;   // size order
  int order = 0;
  double limit = 1e300;
  double* out = nullptr;  // (order+1) * x.size()
  int* trip = nullptr;    // x.size(), may be null
};
void poly_table(const PolyTableArgs& args);

// Terminated Stieltjes continued fraction of a zero-diagonal Jacobi matrix,
// evaluated at z = x + i*eta over a grid:
//   u = T(z);  u = z - b_k^2/u  for k = depth-1 .. 1;  out = -Im(1/u)/pi
// where T is the constant-b tail resolvent branch at b = b[depth-1].
// b2 holds b_1^2..b_{depth}^2.
void stieltjes_grid(std::span<const double> x, double eta,
                    std::span<const double> b2, double* out);

enum class Backend { Scalar, Avx2 };
Backend active_backend();
bool backend_available(Backend b);
std::string backend_name(Backend b);

// For equivalence tests: run a specific backend regardless of dispatch.
void poly_table_backend(Backend b, const PolyTableArgs& args);
void stieltjes_grid_backend(Backend b, std::span<const double> x, double eta,
                            std::span<const double> b2, double* out);

}  // namespace defquad::kernels

#endif
