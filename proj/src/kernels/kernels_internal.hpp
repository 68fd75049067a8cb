#ifndef DEFQUAD_KERNELS_INTERNAL_HPP
#define DEFQUAD_KERNELS_INTERNAL_HPP

#include <complex>
#include <span>

#include "defquad/kernels.hpp"

namespace defquad::kernels::detail {

void poly_table_scalar(const PolyTableArgs& args);
void stieltjes_grid_scalar(std::span<const double> x, double eta,
                           std::span<const double> b2, double* out);

#if defined(__x86_64__)
void poly_table_avx2(const PolyTableArgs& args);
void stieltjes_grid_avx2(std::span<const double> x, double eta,
                         std::span<const double> b2, double* out);
#endif

// Terminated-tail starting value u_N = (z + sqrt(z^2 - 4 b_N^2))/2, branch
// with Re(conj(z) w) >= 0 so that Im u > 0 for eta > 0.
inline std::complex<double> cf_terminator(std::complex<double> z, double b2_last) {
  std::complex<double> w = std::sqrt(z * z - 4.0 * b2_last);
  if (z.real() * w.real() + z.imag() * w.imag() < 0.0) w = -w;
  return 0.5 * (z + w);
}

}  // namespace defquad::kernels::detail

#endif
