#include <cmath>

#include "kernels_internal.hpp"

namespace defquad::kernels::detail {

// Reference implementations. The fma/product grouping here is mirrored by the
// AVX2 variants so both backends round identically.

void poly_table_scalar(const PolyTableArgs& args) {
  const size_t npts = args.x.size();
  const int order = args.order;
  for (size_t i = 0; i < npts; ++i) {
    const double x = args.x[i];
    double jp = 0.0;  // J_{n-1}
    double jc = 1.0;  // J_n
    args.out[i] = 1.0;
    int trip = order + 1;
    bool active = true;
    for (int n = 0; n < order; ++n) {
      double jn = 0.0;
      if (active) {
        const double ax = args.alpha[static_cast<size_t>(n)] * x;
        jn = std::fma(ax, jc, -(args.beta[static_cast<size_t>(n)] * jp));
        if (!(std::fabs(jn) <= args.limit)) {  // also catches NaN
          trip = n + 1;
          active = false;
          jn = 0.0;
        }
      }
      args.out[static_cast<size_t>(n + 1) * npts + i] = jn;
      jp = jc;
      jc = jn;
    }
    if (args.trip) args.trip[i] = trip;
  }
}

void stieltjes_grid_scalar(std::span<const double> x, double eta,
                           std::span<const double> b2, double* out) {
  const size_t npts = x.size();
  const size_t depth = b2.size();
  const double inv_pi = 1.0 / 3.14159265358979323846;
  for (size_t i = 0; i < npts; ++i) {
    const double zr = x[i];
    const double zi = eta;
    double ur, ui;
    if (depth == 0) {
      ur = zr;
      ui = zi;
    } else {
      const std::complex<double> u0 = cf_terminator({zr, zi}, b2[depth - 1]);
      ur = u0.real();
      ui = u0.imag();
      for (size_t k = depth - 1; k >= 1; --k) {
        const double den = std::fma(ur, ur, ui * ui);
        const double t = b2[k - 1] / den;
        ur = std::fma(-t, ur, zr);
        ui = std::fma(t, ui, zi);
      }
    }
    const double den = std::fma(ur, ur, ui * ui);
    out[i] = (ui / den) * inv_pi;
  }
}

}  // namespace defquad::kernels::detail
