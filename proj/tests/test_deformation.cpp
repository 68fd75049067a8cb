#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "defquad/deformation.hpp"
#include "test_helpers.hpp"

using namespace defquad;
using testutil::rel_diff;

TEST_CASE("validate accepts in-range parameters and names violations") {
  CHECK_NOTHROW(validate(DeformationSpec::math_q(0.9)));
  CHECK_THROWS_AS(validate(DeformationSpec::math_q(1.2)), DomainError);
  CHECK_THROWS_AS(validate(DeformationSpec::math_q(0.0)), DomainError);
  CHECK_THROWS_AS(validate(DeformationSpec::physics_q(0.9)), DomainError);
  CHECK_THROWS_AS(validate(DeformationSpec::physics_q(1.0)), DomainError);
  CHECK_NOTHROW(validate(DeformationSpec::physics_q(1.0001)));
  // p*q = 1 makes the bracket denominator singular
  CHECK_THROWS_AS(validate(DeformationSpec::pq(2.0, 0.5)), DomainError);
  CHECK_THROWS_AS(validate(DeformationSpec::pq(-1.0, 0.5)), DomainError);
  CHECK_THROWS_AS(validate(DeformationSpec::pq(1.5, 0.0)), DomainError);
  CHECK_NOTHROW(validate(DeformationSpec::pq(1.5, 0.5)));
  CHECK_NOTHROW(validate(DeformationSpec::harmonic()));

  try {
    validate(DeformationSpec::math_q(1.2));
    CHECK(false);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("0 < q < 1") != std::string::npos);
  }
}

TEST_CASE("deformation_Q per family") {
  CHECK(deformation_Q(DeformationSpec::math_q(0.9)) == doctest::Approx(0.81).epsilon(1e-15));
  CHECK(deformation_Q(DeformationSpec::harmonic()) == 1.0);
  CHECK(deformation_Q(DeformationSpec::pq(1.5, 0.5)) == 1.5);
  CHECK(deformation_Q(DeformationSpec::physics_q(1.5)) == 1.5);
}

TEST_CASE("bracket values against hand evaluations") {
  for (const auto& s : testutil::standard_specs()) {
    CHECK(bracket(s, 0) == 0.0);
    CHECK(bracket(s, 1) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(bracket(DeformationSpec::math_q(0.9), 2) == doctest::Approx(1.81).epsilon(1e-15));
  CHECK(bracket(DeformationSpec::physics_q(1.5), 2) ==
        doctest::Approx(13.0 / 6.0).epsilon(1e-15));
  CHECK(bracket(DeformationSpec::pq(1.5, 0.5), 2) == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(bracket(DeformationSpec::harmonic(), 7) == 7.0);
}

TEST_CASE("bracket_factorial and log variant") {
  CHECK(bracket_factorial(DeformationSpec::harmonic(), 3) == 6.0);
  CHECK(bracket_factorial(DeformationSpec::math_q(0.9), 2) ==
        doctest::Approx(1.81).epsilon(1e-15));
  for (const auto& s : testutil::standard_specs()) CHECK(bracket_factorial(s, 0) == 1.0);

  // log variant agrees where both are finite
  for (const auto& s : testutil::standard_specs()) {
    const double f = bracket_factorial(s, 12);
    CHECK(rel_diff(std::log(f), log_bracket_factorial(s, 12)) < 1e-12);
  }

  // geometric growth overflows the plain factorial long before the brackets do
  const auto hot = DeformationSpec::physics_q(1.9);
  CHECK_THROWS_AS(bracket_factorial(hot, 400), OverflowError);
  CHECK(std::isfinite(log_bracket_factorial(hot, 400)));
  CHECK_THROWS_AS(bracket(hot, 3000), OverflowError);
}

TEST_CASE("bracket_sequence examples and invariants") {
  const auto harm = bracket_sequence(DeformationSpec::harmonic(), 3);
  CHECK(harm.values == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  CHECK(harm.offdiag[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(harm.offdiag[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(harm.offdiag[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));

  const auto mq = bracket_sequence(DeformationSpec::math_q(0.9), 2);
  CHECK(mq.values[2] == doctest::Approx(1.81).epsilon(1e-15));
  // b_1 = sqrt(1.81)/2, b_2 = (sqrt(1.81)/2) sqrt(1.81) = 1.81/2
  CHECK(mq.offdiag[0] == doctest::Approx(0.672681202353685).epsilon(1e-12));
  CHECK(mq.offdiag[1] == doctest::Approx(0.905).epsilon(1e-14));

  for (const auto& s : testutil::standard_specs()) {
    const auto seq = bracket_sequence(s, 1);
    CHECK(seq.values[0] == 0.0);
    CHECK(seq.values[1] == doctest::Approx(1.0).epsilon(1e-15));
  }

  // offdiag^2 = (1+Q)/4 [n] to machine precision
  for (const auto& s : testutil::standard_specs()) {
    const auto seq = bracket_sequence(s, 40);
    const double Q = deformation_Q(s);
    for (int n = 1; n <= 40; ++n) {
      const double b = seq.offdiag[static_cast<size_t>(n) - 1];
      CHECK(rel_diff(b * b, 0.25 * (1.0 + Q) * seq.values[static_cast<size_t>(n)]) < 4e-16);
    }
  }
}

TEST_CASE("positivity and monotonicity on the exercised ranges") {
  for (const auto& s : testutil::standard_specs()) {
    double prev = 0.0;
    for (int n = 1; n <= 50; ++n) {
      const double v = bracket(s, n);
      CHECK(v > 0.0);
      // math-type increments q^{2n} drop below one ulp around n ~ 25; strict
      // growth is checkable while the increment is representable
      if (n <= 20)
        CHECK(v > prev);
      else
        CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("math-type boundedness [n] < 1/(1-q^2)") {
  for (const double q : {0.1, 0.5, 0.9, 0.99}) {
    const auto s = DeformationSpec::math_q(q);
    const double bound = 1.0 / (1.0 - q * q);
    for (int n = 1; n <= 200; ++n) CHECK(bracket(s, n) < bound * (1.0 + 1e-15));
  }
}

TEST_CASE("stable sums agree with the textbook quotient forms") {
  testutil::Rng rng(20240811);
  // math-type
  for (int trial = 0; trial < 20; ++trial) {
    const double q = rng.uniform(0.1, 0.95);
    const auto s = DeformationSpec::math_q(q);
    for (int n = 0; n <= 30; ++n) {
      const double quotient = (1.0 - std::pow(q, 2.0 * n)) / (1.0 - q * q);
      CHECK(rel_diff(bracket(s, n), quotient) < 1e-12);
    }
  }
  // physics-type
  for (int trial = 0; trial < 20; ++trial) {
    const double q = rng.uniform(1.05, 3.0);
    const auto s = DeformationSpec::physics_q(q);
    for (int n = 0; n <= 30; ++n) {
      const double quotient =
          q * (std::pow(q, -static_cast<double>(n)) - std::pow(q, static_cast<double>(n))) /
          (1.0 - q * q);
      CHECK(rel_diff(bracket(s, n), quotient) < 1e-12);
    }
  }
  // (p,q) away from the pq=1 singular surface
  int done = 0;
  while (done < 20) {
    const double p = rng.uniform(0.2, 2.5);
    const double q = rng.uniform(0.2, 2.5);
    if (std::fabs(1.0 - p * q) <= 0.05) continue;
    ++done;
    const auto s = DeformationSpec::pq(p, q);
    for (int n = 0; n <= 30; ++n) {
      const double quotient =
          q * (std::pow(q, -static_cast<double>(n)) - std::pow(p, static_cast<double>(n))) /
          (1.0 - p * q);
      CHECK(rel_diff(bracket(s, n), quotient) < 1e-12);
    }
  }
}

TEST_CASE("scalar Q-commutation identity [n+1] - Q [n]") {
  // the subtraction cancels operands of size [n+1], which is the residual scale
  for (const auto& s : testutil::standard_specs()) {
    const double Q = deformation_Q(s);
    for (int n = 0; n <= 30; ++n) {
      const double hi = bracket(s, n + 1);
      const double lo = Q * bracket(s, n);
      double rhs = 1.0;
      if (s.kind == DeformationKind::PhysicsQ || s.kind == DeformationKind::PQ)
        rhs = std::pow(s.q, -static_cast<double>(n));
      CHECK(std::fabs((hi - lo) - rhs) < 1e-12 * std::max({1.0, hi, lo}));
    }
  }
}

TEST_CASE("harmonic limit of math-type brackets") {
  const auto s = DeformationSpec::math_q(0.9999);
  for (int n = 1; n <= 10; ++n)
    CHECK(std::fabs(bracket(s, n) - n) < 1e-3 * n);
}

TEST_CASE("decaying bracket families are rejected at sequence build") {
  // p < 1 < q makes [n] -> 0: the recurrences would track a minimal solution
  const auto s = DeformationSpec::pq(0.5, 3.0);
  CHECK_NOTHROW(validate(s));  // parameter ranges alone are fine
  CHECK(bracket(s, 2) < bracket(s, 1));
  CHECK_THROWS_AS(bracket_sequence(s, 8), DomainError);
  // p = 1, q > 1 is bounded but nondecreasing: accepted
  CHECK_NOTHROW(bracket_sequence(DeformationSpec::pq(1.0, 1.2), 64));
  // math-type saturation at the double limit must not trip the check
  CHECK_NOTHROW(bracket_sequence(DeformationSpec::math_q(0.5), 400));
}
