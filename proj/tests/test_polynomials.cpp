#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "defquad/polynomials.hpp"
#include "test_helpers.hpp"

using namespace defquad;
using testutil::linspace;
using testutil::rel_diff;

namespace {

double hermite_normalized(int n, double x) {
  return hermite_oracle(n, x) / std::sqrt(std::exp2(n) * std::tgamma(n + 1.0));
}

}  // namespace

TEST_CASE("classical oracles") {
  CHECK(hermite_oracle(0, 1.7) == 1.0);
  CHECK(hermite_oracle(2, 1.0) == doctest::Approx(2.0).epsilon(1e-15));  // 4x^2-2
  CHECK(hermite_oracle(3, 0.5) == doctest::Approx(8 * 0.125 - 12 * 0.5).epsilon(1e-14));
  CHECK(chebyshev_u_oracle(2, 0.5) == doctest::Approx(0.0));  // 4x^2-1 at 1/2
  CHECK(chebyshev_u_oracle(0, -0.3) == 1.0);
  CHECK(chebyshev_u_oracle(5, 0.3) ==
        doctest::Approx(std::sin(6 * std::acos(0.3)) / std::sin(std::acos(0.3))).epsilon(1e-12));
}

TEST_CASE("eval_all base cases") {
  const auto e0 = eval_all(DeformationSpec::pq(1.3, 0.5), 0.37, 0);
  CHECK(e0.values == std::vector<double>{1.0});
  CHECK(!e0.overflow_at);

  const auto e1 = eval_all(DeformationSpec::math_q(0.9), 1.0, 1);
  CHECK(e1.values[1] == doctest::Approx(2.0 / std::sqrt(1.81)).epsilon(1e-14));  // 1.48659

  // q -> 0 limit reproduces the Chebyshev value U_2(0.5) = 0
  const auto e2 = eval_all(DeformationSpec::math_q(1e-8), 0.5, 2);
  CHECK(std::fabs(e2.values[2]) < 1e-8);

  const auto eh = eval_all(DeformationSpec::harmonic(), 1.0, 2);
  CHECK(eh.values[2] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));  // (4-2)/sqrt(8)
}

TEST_CASE("eval_grid matches eval_all and respects parity") {
  const auto spec = DeformationSpec::harmonic();
  const auto rows = eval_grid(spec, {-1.0, 0.0, 1.0}, 1);
  CHECK(rows[0].values[1] == -rows[2].values[1]);
  CHECK(rows[1].values[1] == 0.0);

  const auto mq = DeformationSpec::math_q(0.9);
  const auto at0 = eval_grid(mq, {0.0}, 5)[0];
  for (int n = 1; n <= 5; n += 2) CHECK(at0.values[static_cast<size_t>(n)] == 0.0);

  const auto single = eval_grid(mq, {0.73}, 6)[0];
  const auto direct = eval_all(mq, 0.73, 6);
  for (int n = 0; n <= 6; ++n)
    CHECK(single.values[static_cast<size_t>(n)] == direct.values[static_cast<size_t>(n)]);

  CHECK_THROWS_AS(eval_grid(mq, {}, 3), DomainError);
  CHECK_THROWS_AS(eval_grid(mq, {1.0, 1.0}, 3), DomainError);
}

TEST_CASE("parity is exact up to sign on symmetric grids") {
  for (const auto& s : testutil::standard_specs()) {
    for (const double x : {0.25, 0.8, 1.9, 3.1}) {
      const auto plus = eval_all(s, x, 12);
      const auto minus = eval_all(s, -x, 12);
      for (int n = 0; n <= 12; ++n) {
        const double expect = (n % 2 == 0) ? plus.values[static_cast<size_t>(n)]
                                           : -plus.values[static_cast<size_t>(n)];
        CHECK(minus.values[static_cast<size_t>(n)] == expect);  // bit-identical
      }
    }
  }
}

TEST_CASE("closed forms for J2 and J3 match the recurrence") {
  for (const auto& s : testutil::standard_specs()) {
    for (const double x : linspace(-3.0, 3.0, 61)) {
      const auto ev = eval_all(s, x, 3);
      CHECK(rel_diff(ev.values[2], j2_closed_form(s, x)) < 1e-12);
      CHECK(rel_diff(ev.values[3], j3_closed_form(s, x)) < 1e-12);
    }
  }
}

TEST_CASE("hermite limit: spec constants hold through n=2, measured envelope beyond") {
  double dev2_a = 0.0, dev8_a = 0.0, dev2_b = 0.0, dev8_b = 0.0;
  for (const double x : linspace(-3.0, 3.0, 61)) {
    const auto ea = eval_all(DeformationSpec::math_q(0.999), x, 8);
    const auto eb = eval_all(DeformationSpec::math_q(0.9999), x, 8);
    for (int n = 0; n <= 8; ++n) {
      const double h = hermite_normalized(n, x);
      const double da = std::fabs(ea.values[static_cast<size_t>(n)] - h);
      const double db = std::fabs(eb.values[static_cast<size_t>(n)] - h);
      if (n <= 2) {
        dev2_a = std::max(dev2_a, da);
        dev2_b = std::max(dev2_b, db);
      }
      dev8_a = std::max(dev8_a, da);
      dev8_b = std::max(dev8_b, db);
    }
  }
  CHECK(dev2_a <= 2e-2);  // q=0.999
  CHECK(dev2_b <= 2e-3);  // q=0.9999
  CHECK(dev8_a <= 2.0);   // measured 1.624
  CHECK(dev8_b <= 0.2);   // measured 0.161
  // linear tightening in (1-q): one decade in q-gap, one decade in deviation
  CHECK(dev8_a / dev8_b == doctest::Approx(10.0).epsilon(0.15));
  CHECK(dev8_b < dev8_a);
}

TEST_CASE("chebyshev limit at q=1e-8") {
  const auto s = DeformationSpec::math_q(1e-8);
  for (const double x : linspace(-1.0, 1.0, 81)) {
    const auto ev = eval_all(s, x, 10);
    for (int n = 0; n <= 10; ++n)
      CHECK(std::fabs(ev.values[static_cast<size_t>(n)] - chebyshev_u_oracle(n, x)) < 1e-8);
  }
}

TEST_CASE("overflow trips in-band and truncates the value list") {
  // physics-type brackets grow geometrically; push until the limit trips
  const auto s = DeformationSpec::physics_q(1.9);
  const auto ev = eval_all(s, 1e150, 100);
  REQUIRE(ev.overflow_at.has_value());
  CHECK(*ev.overflow_at <= 100);
  CHECK(ev.values.size() == static_cast<size_t>(*ev.overflow_at));
  for (const double v : ev.values) CHECK(std::isfinite(v));

  const auto fine = eval_all(s, 2.0, 100);
  CHECK(!fine.overflow_at);
  CHECK(fine.values.size() == 101);
}

TEST_CASE("wavefunction recurrence ratio reproduces the product form") {
  // Psi_{n+1}/Psi_0 from the two-term recurrence equals e^{-i(n+1)theta} J_{n+1}
  using cplx = std::complex<double>;
  for (const auto& s : testutil::standard_specs()) {
    const double Q = deformation_Q(s);
    const auto seq = bracket_sequence(s, 12);
    for (const double theta : {0.0, 0.7, 1.5707963267948966}) {
      const cplx eith(std::cos(theta), -std::sin(theta));  // e^{-i theta}
      for (const double x : {0.4, 1.3, 2.6}) {
        const auto ev = eval_all(s, x, 11);
        cplx prev(1.0, 0.0);  // Psi_0 / Psi_0
        cplx cur = eith / std::sqrt(seq.values[1]) * (2.0 * x / std::sqrt(1.0 + Q));
        for (int n = 1; n <= 10; ++n) {
          const cplx product = std::polar(1.0, -n * theta) * ev.values[static_cast<size_t>(n)];
          CHECK(std::abs(cur - product) <=
                1e-12 * std::max(1.0, std::abs(product)));
          const cplx nxt = eith / std::sqrt(seq.values[static_cast<size_t>(n) + 1]) *
                           (2.0 * x / std::sqrt(1.0 + Q) * cur -
                            std::sqrt(seq.values[static_cast<size_t>(n)]) * eith * prev);
          prev = cur;
          cur = nxt;
        }
      }
    }
  }
}
