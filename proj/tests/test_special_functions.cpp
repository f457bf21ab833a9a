#include <cmath>

#include "doctest.h"
#include "ifn/errors.hpp"
#include "ifn/special_functions.hpp"
#include "test_support.hpp"

using namespace ifn;
using ifn::testing::rel_err;

namespace {

// Weierstrass form: ln Gamma(z) = -g z - ln z + sum_k [z/k - ln(1 + z/k)],
// with the tail beyond K replaced by its Euler-Maclaurin expansion.
Complex weierstrass_log_gamma(Complex z) {
  const double euler_gamma = 0.57721566490153286061;
  const int K = 200000;
  Complex sum = 0.0;
  for (int k = K; k >= 1; --k) sum += z / double(k) - std::log(1.0 + z / double(k));
  // sum_{k>K} of z^2/(2k^2) - z^3/(3k^3) + z^4/(4k^4) ...
  const double Kd = K;
  const Complex z2 = z * z;
  const Complex tail = z2 / 2.0 * (1.0 / Kd - 0.5 / (Kd * Kd)) -
                       z2 * z / 3.0 * (0.5 / (Kd * Kd)) + z2 * z2 / 4.0 * (1.0 / (3.0 * Kd * Kd * Kd));
  return -euler_gamma * z - std::log(z) + sum + tail;
}

}  // namespace

TEST_CASE("log_gamma fixed values") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(rel_err(log_gamma(0.5), 0.5 * std::log(kPi)) < 1e-14);
  CHECK(rel_err(log_gamma(0.5), 0.57236494292470008707) < 1e-14);
}

TEST_CASE("log_gamma(1+i) against the Weierstrass product") {
  const Complex z(1.0, 1.0);
  const Complex oracle = weierstrass_log_gamma(z);
  // Frozen from the oracle above.
  const Complex frozen(-0.65092319930185634, -0.30164032046753320);
  CHECK(std::abs(oracle - frozen) < 1e-11);
  CHECK(std::abs(log_gamma(z) - frozen) < 1e-14);
}

TEST_CASE("log_gamma is continuous in the imaginary part") {
  // Along Re z = -7.5 the unwrapped branch never jumps by 2 pi.
  Complex prev = log_gamma(Complex(-7.5, 0.01));
  for (int i = 1; i < 400; ++i) {
    const Complex cur = log_gamma(Complex(-7.5, 0.01 + 0.5 * i));
    CHECK(std::abs(cur.imag() - prev.imag()) < 3.0);
    prev = cur;
  }
}

TEST_CASE("log_gamma poles") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
  CHECK(rgamma(-2.0) == Complex(0.0));
}

TEST_CASE("reflection and recurrence on a complex grid") {
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      const Complex z(-4.7 + 0.93 * i, -3.1 + 0.71 * j);
      const Complex product = std::exp(log_gamma(z) + log_gamma(1.0 - z));
      CHECK(rel_err(product, kPi / std::sin(kPi * z)) < 1e-12);
      CHECK(rel_err(gamma(z + 1.0), z * gamma(z)) < 1e-12);
    }
  }
}

TEST_CASE("accuracy for large imaginary parts") {
  // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
  for (double t : {10.0, 50.0, 120.0, 200.0}) {
    const double lhs = 2.0 * log_gamma(Complex(0.5, t)).real();
    const double rhs = std::log(kPi) - std::log(std::cosh(kPi * t));
    CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
  }
}

TEST_CASE("gamma_power") {
  CHECK(rel_err(gamma_power(3.0, 2.0), 4.0) < 1e-14);
  CHECK(rel_err(gamma_power(1.0, 0.5), 1.0) < 1e-14);
  CHECK(rel_err(gamma_power(0.5, 1.5), std::pow(kPi, 0.75)) < 1e-14);
  CHECK(rel_err(gamma_power(0.5, 1.5), 2.35973) < 1e-5);
  ifn::testing::Draws draws(7);
  for (int i = 0; i < 50; ++i) {
    const Complex z = draws.complex(-6.0, 8.0, 20.0);
    const double e1 = draws.uniform(0.1, 3.0), e2 = draws.uniform(0.1, 3.0);
    CHECK(rel_err(gamma_power(z, e1 + e2), gamma_power(z, e1) * gamma_power(z, e2)) < 1e-11);
  }
  CHECK_THROWS_AS(gamma_power(-1.0, 0.5), PoleError);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(5.0, 0) == Complex(1.0));
  CHECK(pochhammer(1.0, 4) == Complex(24.0));
  CHECK(pochhammer(2.0, 3) == Complex(24.0));
  ifn::testing::Draws draws(11);
  for (int i = 0; i < 30; ++i) {
    const Complex z = draws.complex(-5.0, 5.0, 2.0);
    const int n = static_cast<int>(draws.uniform(0.0, 12.0));
    CHECK(rel_err(pochhammer(z, n + 1), pochhammer(z, n) * (z + double(n))) < 1e-15);
  }
}
