#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace defquad::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_backend() {
  if (const char* env = std::getenv("DEFQUAD_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Backend::Avx2;
    return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

}  // namespace

Backend active_backend() {
  static const Backend b = pick_backend();
  return b;
}

bool backend_available(Backend b) {
  if (b == Backend::Scalar) return true;
  return cpu_has_avx2();
}

std::string backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

void poly_table_backend(Backend b, const PolyTableArgs& args) {
#if defined(__x86_64__)
  if (b == Backend::Avx2 && backend_available(Backend::Avx2)) {
    detail::poly_table_avx2(args);
    return;
  }
#endif
  detail::poly_table_scalar(args);
}

void stieltjes_grid_backend(Backend b, std::span<const double> x, double eta,
                            std::span<const double> b2, double* out) {
#if defined(__x86_64__)
  if (b == Backend::Avx2 && backend_available(Backend::Avx2)) {
    detail::stieltjes_grid_avx2(x, eta, b2, out);
    return;
  }
#endif
  detail::stieltjes_grid_scalar(x, eta, b2, out);
}

void poly_table(const PolyTableArgs& args) { poly_table_backend(active_backend(), args); }

void stieltjes_grid(std::span<const double> x, double eta, std::span<const double> b2,
                    double* out) {
  stieltjes_grid_backend(active_backend(), x, eta, b2, out);
}

}  // namespace defquad::kernels
