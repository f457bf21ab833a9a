#include <chrono>
#include <cmath>

#include "doctest.h"
#include "ifn/errors.hpp"
#include "ifn/ifunction.hpp"
#include "test_support.hpp"

using namespace ifn;
using ifn::testing::rel_err;

namespace {

// Residue sums over the poles of Gamma(s) at s = -k.
Complex exp_residues(Complex z) {
  Complex sum = 0.0, term = 1.0;
  for (int k = 0; k < 200; ++k) {
    sum += term;
    term *= -z / (k + 1.0);
  }
  return sum;
}

Complex mittag_leffler_residues(double alpha, Complex z) {
  Complex sum = 0.0;
  for (int k = 0; k < 200; ++k) sum += std::pow(-z, k) / std::tgamma(alpha * k + 1.0);
  return sum;
}

IFunction ratio_instance(double b, double a) {
  IFunction f;
  f.m = 1;
  f.p = 1;
  f.q = 1;
  f.upper = {{a, 1.0, 1.0}};
  f.lower = {{b, 1.0, 1.0}};
  return f;
}

}  // namespace

TEST_CASE("chi on small instances") {
  IFunction f = make_exp_instance();
  CHECK(rel_err(chi(f, 1.0), 1.0) < 1e-15);
  CHECK(rel_err(chi(f, 0.5), std::sqrt(kPi)) < 1e-14);
  f.lower[0].exponent = 2.0;
  CHECK(rel_err(chi(f, 1.0), 1.0) < 1e-15);
  CHECK(rel_err(chi(f, 0.5), kPi) < 1e-14);
  CHECK_THROWS_AS(chi(f, -2.0), PoleError);
  // Denominator poles are zeros of the integrand.
  CHECK(chi(ratio_instance(0.2, 0.5), -0.5) == Complex(0.0));
}

TEST_CASE("convergence_report") {
  const ConvergenceReport e = convergence_report(make_exp_instance());
  CHECK(e.mu == 1.0);
  CHECK(e.delta == 1.0);
  CHECK(e.omega == doctest::Approx(-0.5));
  CHECK(e.analytic);
  CHECK(e.abs_convergent_sector == doctest::Approx(kPi / 2));

  const ConvergenceReport empty = convergence_report(IFunction{});
  CHECK(empty.mu == 0.0);
  CHECK(empty.omega == 0.0);
  CHECK(empty.delta == 0.0);
  CHECK(empty.abs_convergent_sector == 0.0);

  const ConvergenceReport g = convergence_report(make_gauss2f1_instance(0.5, 0.7, 1.3));
  CHECK(g.delta == 2.0);
  CHECK(g.mu == 0.0);
  CHECK(g.abs_convergent_sector == doctest::Approx(kPi));
}

TEST_CASE("sector boundary classification") {
  // Delta = 0, mu = 0, Omega = b - a.
  CHECK(contour_admissible(ratio_instance(0.2, 1.7), 1.0, 0.0));
  CHECK_FALSE(contour_admissible(ratio_instance(0.2, 1.2), 1.0, 0.0));  // Omega = -1 exactly
  CHECK_FALSE(contour_admissible(ratio_instance(0.2, 0.9), 1.0, 0.0));
  std::string why;
  CHECK_FALSE(contour_admissible(make_exp_instance(), Complex(-1.0, 0.0), 0.5, &why));
  CHECK(why.find("Delta") != std::string::npos);
}

TEST_CASE("exponential instance matches exp(-z)") {
  const IFunction f = make_exp_instance();
  const auto start = std::chrono::steady_clock::now();
  for (double z : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    CHECK(rel_err(exp_residues(z), std::exp(-z)) < 1e-13);
    CHECK(rel_err(evaluate(f, z), std::exp(-z)) < 1e-8);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds < 1.0);
  const Complex zc(1.0, 0.8);
  CHECK(rel_err(evaluate(f, zc), exp_residues(zc)) < 1e-8);
}

TEST_CASE("offset placement") {
  const IFunction f = make_exp_instance();
  ContourConfig cfg;
  CHECK(choose_offset(f, cfg) == doctest::Approx(0.5));
  cfg.auto_offset = false;
  CHECK_THROWS_AS(evaluate(f, 1.0, cfg), ContourError);
  cfg.offset = -0.5;
  CHECK_THROWS_AS(evaluate(f, 1.0, cfg), ContourError);

  // Two admissible offsets separate the poles identically.
  cfg.offset = 0.3;
  const Complex v1 = evaluate(f, 1.3, cfg);
  cfg.offset = 1.7;
  const Complex v2 = evaluate(f, 1.3, cfg);
  CHECK(std::abs(v1 - v2) <= 10.0 * cfg.tol * std::abs(v1));

  IFunction crossed = make_gauss2f1_instance(-0.3, 0.5, 1.0);
  CHECK_THROWS_AS(evaluate(crossed, 0.5), ContourError);
}

TEST_CASE("doubling the node count stays within tolerance") {
  const IFunction f = make_gauss2f1_instance(0.6, 1.1, 1.9);
  ContourConfig cfg;
  const Complex base = evaluate(f, 0.7, cfg);
  cfg.nodes *= 2;
  CHECK(std::abs(evaluate(f, 0.7, cfg) - base) <= cfg.tol * std::abs(base));
}

TEST_CASE("2F1 instance agrees with gauss_2f1") {
  const Complex params[][3] = {{0.5, 0.7, 1.3}, {1.2, 0.4, 2.1}, {0.3, 0.3, 0.8}, {2.0, 1.5, 3.5}};
  for (const auto& abc : params) {
    const IFunction f = make_gauss2f1_instance(abc[0], abc[1], abc[2]);
    const Complex scale = gamma(abc[0]) * gamma(abc[1]) / gamma(abc[2]);
    for (double z : {0.1, 0.6, 2.5}) {
      CHECK(rel_err(evaluate(f, z), scale * gauss_2f1(abc[0], abc[1], abc[2], -z)) < 1e-8);
    }
  }
}

TEST_CASE("Mittag-Leffler instance agrees with its residue series") {
  for (double alpha : {0.5, 0.8, 1.4}) {
    const IFunction f = make_mittag_leffler_instance(alpha);
    for (double z : {0.3, 1.0, 2.0}) {
      CHECK(rel_err(evaluate(f, z), mittag_leffler_residues(alpha, z)) < 1e-8);
    }
  }
}

TEST_CASE("algebraic decay on the sector boundary") {
  // (1/2 pi i) int Gamma(b+s)/Gamma(a+s) z^{-s} ds = z^b (1-z)^{a-b-1} / Gamma(a-b), 0 < z < 1.
  const double b = 0.2, a = 3.7, z = 0.5;
  ContourConfig cfg;
  cfg.tol = 1e-6;
  const double exact = std::pow(z, b) * std::pow(1.0 - z, a - b - 1.0) / std::tgamma(a - b);
  CHECK(rel_err(evaluate(ratio_instance(b, a), z, cfg), exact) < 1e-5);
}

TEST_CASE("known_forms") {
  CHECK(known_forms(make_exp_instance()).tag == KnownTag::Exp);
  const KnownForm g = known_forms(make_gauss2f1_instance(0.5, 0.7, 1.3));
  REQUIRE(g.tag == KnownTag::Gauss2F1);
  CHECK(std::abs(g.parameters[2] - 1.3) < 1e-15);
  CHECK(known_forms(make_mittag_leffler_instance(0.7)).tag == KnownTag::MittagLeffler);

  IFunction h = make_gauss2f1_instance(0.5, 0.7, 1.3);
  h.lower[0].param = 0.1;
  CHECK(known_forms(h).tag == KnownTag::MeijerG);
  h.upper[1].scale = 2.0;
  CHECK(known_forms(h).tag == KnownTag::FoxH);
  h.upper[1].exponent = 0.5;  // inside i <= n, still H-bar
  CHECK(known_forms(h).tag == KnownTag::HBar);
  h.lower[0].exponent = 0.5;
  CHECK(known_forms(h).tag == KnownTag::None);
}

TEST_CASE("validation names the constraint") {
  IFunction f = make_exp_instance();
  f.lower[0].scale = -1.0;
  CHECK_THROWS_WITH_AS(f.validate(), doctest::Contains("scale > 0"), InvariantError);
  f = make_exp_instance();
  f.m = 2;
  CHECK_THROWS_WITH_AS(f.validate(), doctest::Contains("m <= q"), InvariantError);
  // Gamma(s) and Gamma(1 - a - s) with a = 1 share the pole s = 0.
  IFunction clash = make_gauss2f1_instance(0.0, 0.5, 1.0);
  CHECK_THROWS_AS(clash.validate(), InvariantError);
}

TEST_CASE("chi factorization under inserted triples") {
  ifn::testing::Draws draws(5);
  const IFunction base = make_gauss2f1_instance(0.6, 0.9, 1.7);
  for (int i = 0; i < 20; ++i) {
    const Complex u = draws.complex(-1.0, 0.2), l = draws.complex(-1.0, 0.2);
    const double slope = draws.uniform(0.5, 2.0);
    IFunction ext = base;
    ext.upper.insert(ext.upper.begin(), {u, slope, 1.0});
    ext.lower.push_back({l, slope, 1.0});
    ++ext.n;
    ++ext.p;
    ++ext.q;
    const Complex s(draws.uniform(-0.05, 0.05), draws.uniform(-20.0, 20.0));
    const Complex ratio = gamma(1.0 - u - slope * s) / gamma(1.0 - l - slope * s);
    CHECK(rel_err(chi(ext, s), chi(base, s) * ratio) < 1e-12);
  }
}
