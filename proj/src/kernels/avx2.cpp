#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace defquad::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d signmask = _mm256_set1_pd(-0.0);
  return _mm256_andnot_pd(signmask, v);
}

}  // namespace

void poly_table_avx2(const PolyTableArgs& args) {
  const size_t npts = args.x.size();
  const int order = args.order;
  const size_t nvec = npts - npts % 4;
  const __m256d limit = _mm256_set1_pd(args.limit);

  for (size_t i = 0; i < nvec; i += 4) {
    const __m256d x = _mm256_loadu_pd(args.x.data() + i);
    __m256d jp = _mm256_setzero_pd();
    __m256d jc = _mm256_set1_pd(1.0);
    __m256d active = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    _mm256_storeu_pd(args.out + i, jc);
    int trips[4] = {order + 1, order + 1, order + 1, order + 1};
    for (int n = 0; n < order; ++n) {
      const __m256d alpha = _mm256_set1_pd(args.alpha[static_cast<size_t>(n)]);
      const __m256d beta = _mm256_set1_pd(args.beta[static_cast<size_t>(n)]);
      const __m256d ax = _mm256_mul_pd(alpha, x);
      __m256d jn = _mm256_fmsub_pd(ax, jc, _mm256_mul_pd(beta, jp));
      jn = _mm256_and_pd(jn, active);
      // lanes where !(|jn| <= limit), NaN included
      const __m256d over = _mm256_cmp_pd(abs_pd(jn), limit, _CMP_NLE_UQ);
      const __m256d newtrip = _mm256_and_pd(over, active);
      const int tm = _mm256_movemask_pd(newtrip);
      if (tm) {
        for (int lane = 0; lane < 4; ++lane)
          if (tm & (1 << lane)) trips[lane] = n + 1;
        active = _mm256_andnot_pd(newtrip, active);
        jn = _mm256_and_pd(jn, active);
      }
      _mm256_storeu_pd(args.out + static_cast<size_t>(n + 1) * npts + i, jn);
      jp = jc;
      jc = jn;
    }
    if (args.trip)
      for (int lane = 0; lane < 4; ++lane) args.trip[i + static_cast<size_t>(lane)] = trips[lane];
  }

  // Tail points: same arithmetic as the scalar reference, full-array stride.
  if (nvec < npts) {
    for (size_t i = nvec; i < npts; ++i) {
      const double x = args.x[i];
      double jp = 0.0, jc = 1.0;
      args.out[i] = 1.0;
      int trip = order + 1;
      bool act = true;
      for (int n = 0; n < order; ++n) {
        double jn = 0.0;
        if (act) {
          const double ax = args.alpha[static_cast<size_t>(n)] * x;
          jn = std::fma(ax, jc, -(args.beta[static_cast<size_t>(n)] * jp));
          if (!(std::fabs(jn) <= args.limit)) {
            trip = n + 1;
            act = false;
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
}

void stieltjes_grid_avx2(std::span<const double> x, double eta, std::span<const double> b2,
                         double* out) {
  const size_t npts = x.size();
  const size_t depth = b2.size();
  const size_t nvec = npts - npts % 4;
  const double inv_pi = 1.0 / 3.14159265358979323846;
  const __m256d zi = _mm256_set1_pd(eta);
  const __m256d vinv_pi = _mm256_set1_pd(inv_pi);

  for (size_t i = 0; i < nvec; i += 4) {
    const __m256d zr = _mm256_loadu_pd(x.data() + i);
    __m256d ur, ui;
    if (depth == 0) {
      ur = zr;
      ui = zi;
    } else {
      alignas(32) double u0r[4], u0i[4];
      for (int lane = 0; lane < 4; ++lane) {
        const std::complex<double> u0 =
            cf_terminator({x[i + static_cast<size_t>(lane)], eta}, b2[depth - 1]);
        u0r[lane] = u0.real();
        u0i[lane] = u0.imag();
      }
      ur = _mm256_load_pd(u0r);
      ui = _mm256_load_pd(u0i);
      for (size_t k = depth - 1; k >= 1; --k) {
        const __m256d vb2 = _mm256_set1_pd(b2[k - 1]);
        const __m256d den = _mm256_fmadd_pd(ur, ur, _mm256_mul_pd(ui, ui));
        const __m256d t = _mm256_div_pd(vb2, den);
        ur = _mm256_fnmadd_pd(t, ur, zr);
        ui = _mm256_fmadd_pd(t, ui, zi);
      }
    }
    const __m256d den = _mm256_fmadd_pd(ur, ur, _mm256_mul_pd(ui, ui));
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_div_pd(ui, den), vinv_pi));
  }

  if (nvec < npts)
    stieltjes_grid_scalar(x.subspan(nvec), eta, b2, out + nvec);
}

}  // namespace defquad::kernels::detail

#endif  // __x86_64__
