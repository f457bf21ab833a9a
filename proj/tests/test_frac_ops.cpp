#include <cmath>

#include "doctest.h"
#include "ifn/errors.hpp"
#include "ifn/frac_ops.hpp"
#include "moment_oracle.hpp"
#include "test_support.hpp"

using namespace ifn;
using ifn::testing::Draws;
using ifn::testing::moment_oracle;
using ifn::testing::rel_err;

namespace {

constexpr Family kAllFamilies[] = {Family::MSM_I, Family::MSM_D,   Family::MSM_CD, Family::SAIGO_I,
                                   Family::SAIGO_D, Family::SAIGO_CD, Family::EK_I, Family::EK_D,
                                   Family::EK_CD, Family::RL_I,    Family::RL_D};

OperatorSpec random_spec(Family family, Side side, Draws& d) {
  OperatorSpec spec{family, side, {}};
  for (int i = 0; i < family_arity(family); ++i) spec.params.push_back(d.complex(-0.8, 0.8, 0.2));
  // Order parameter with positive real part.
  Complex& order = (family == Family::MSM_I || family == Family::MSM_D || family == Family::MSM_CD)
                       ? spec.params[4]
                   : (family == Family::EK_I || family == Family::EK_D || family == Family::EK_CD)
                       ? spec.params[1]
                       : spec.params[0];
  order = d.complex(0.1, 2.4, 0.2);
  return spec;
}

std::vector<Complex> msm(double a, double a1, double b, double b1, double g) { return {a, a1, b, b1, g}; }

}  // namespace

TEST_CASE("power_moment matches moments built from the operator definitions") {
  Draws d(101);
  for (Family family : kAllFamilies) {
    for (Side side : {Side::Left, Side::Right}) {
      for (int i = 0; i < 10; ++i) {
        const OperatorSpec spec = random_spec(family, side, d);
        const Complex rho = d.complex(-1.5, 3.5, 0.5);
        const PowerMoment pm = power_moment_unchecked(spec, rho);
        const auto want = moment_oracle(family, side, spec.params, rho);
        INFO(to_string(family), " ", to_string(side));
        CHECK(rel_err(pm.coefficient(), want.coefficient) < 1e-11);
        CHECK(std::abs(pm.exponent - want.exponent) < 1e-13);
      }
    }
  }
}

TEST_CASE("power_moment fixed values") {
  const OperatorSpec trivial{Family::MSM_I, Side::Left, msm(0, 0, 0, 0, 1)};
  for (double rho : {0.5, 1.0, 2.5}) {
    const PowerMoment pm = power_moment(trivial, rho);
    CHECK(rel_err(pm.coefficient(), 1.0 / rho) < 1e-14);
    CHECK(std::abs(pm.exponent - rho) < 1e-15);
  }
  // Riemann-Liouville through Saigo with beta = -alpha: x^2/2 for rho = 2, alpha = 1.
  const PowerMoment rl = power_moment(OperatorSpec{Family::SAIGO_I, Side::Left, {1.0, -1.0, 0.3}}, 2.0);
  CHECK(rel_err(rl.coefficient(), 0.5) < 1e-10);
  CHECK(std::abs(rl.exponent - 2.0) < 1e-15);

  CHECK_THROWS_AS(power_moment(trivial, 0.0), HypothesisError);
}

TEST_CASE("chi of the output equals chi of the input times the moment ratio") {
  Draws d(202);
  const IFunction bases[] = {make_exp_instance(0.7), make_gauss2f1_instance(0.6, 0.9, 1.7, 0.4)};
  for (Family family : kAllFamilies) {
    for (Side side : {Side::Left, Side::Right}) {
      for (const IFunction& base : bases) {
        const OperatorSpec spec = random_spec(family, side, d);
        const PowerWeightedIFunction w = make_weighted(base, d.complex(0.5, 3.0, 0.3), side);
        const ApplyResult res = apply_unchecked(spec, w);
        CHECK(std::abs(res.prefactor_exponent - moment_oracle(family, side, spec.params, w.rho).exponent) < 1e-13);
        const double c = choose_offset(base, {});
        for (int i = 0; i < 20; ++i) {
          const Complex s(c, d.uniform(-10.0, 10.0));
          const Complex lemma = moment_oracle(family, side, spec.params, w.rho - w.exponent * s).coefficient;
          INFO(to_string(family), " ", to_string(side));
          CHECK(rel_err(chi(res.output.base, s), chi(base, s) * lemma) < 1e-12);
          CHECK(rel_err(res.ratio.evaluate(s), lemma) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("apply output shape") {
  const PowerWeightedIFunction w = make_weighted(make_exp_instance(), 1.5, Side::Left);
  const ApplyResult r = apply(OperatorSpec{Family::MSM_I, Side::Left, msm(0.3, 0.2, 0.1, 0.4, 0.9)}, w);
  CHECK(r.output.base.m == 1);
  CHECK(r.output.base.n == 3);
  CHECK(r.output.base.p == 3);
  CHECK(r.output.base.q == 4);
  CHECK(std::abs(r.output.base.upper[0].param - (1.0 - 1.5)) < 1e-15);
  CHECK(r.output.base.upper[0].scale == 1.0);
  CHECK(r.output.base.upper[0].exponent == 1.0);
  CHECK(std::abs(r.prefactor_exponent - (-0.3 - 0.2 + 0.9 + 1.5 - 1.0)) < 1e-15);
  CHECK(std::abs(r.output.rho - (r.prefactor_exponent + 1.0)) < 1e-15);

  const IFunction g = make_mittag_leffler_instance(0.7);
  const PowerWeightedIFunction wg = make_weighted(g, 0.8, Side::Left);
  const ApplyResult ek = apply(OperatorSpec{Family::EK_I, Side::Left, {0.3, 0.5}}, wg);
  CHECK(ek.output.base.m == g.m);
  CHECK(ek.output.base.n == g.n + 1);
  CHECK(ek.output.base.p == g.p + 1);
  CHECK(ek.output.base.q == g.q + 1);
  CHECK(std::abs(ek.output.base.upper[0].param - (1.0 - 0.3 - 0.8)) < 1e-15);
  CHECK(std::abs(ek.output.base.lower.back().param - (1.0 - 0.5 - 0.3 - 0.8)) < 1e-15);
  CHECK(std::abs(ek.prefactor_exponent - (0.8 - 1.0)) < 1e-15);

  for (Family family : kAllFamilies) {
    Draws d(3);
    const ApplyResult x = apply_unchecked(random_spec(family, Side::Left, d), wg);
    const int k = x.output.base.n - g.n;
    const int expect = family_arity(family) == 5 ? 3 : family_arity(family) == 3 ? 2 : 1;
    CHECK(k == expect);
    CHECK(x.output.base.q - g.q == expect);
  }
}

TEST_CASE("Remark substitution maps the derivative rule onto the integral rule") {
  Draws d(303);
  for (int i = 0; i < 50; ++i) {
    const Side side = i % 2 ? Side::Left : Side::Right;
    const OperatorSpec der = random_spec(Family::MSM_D, side, d);
    const OperatorSpec sub = remark_substitution(der, SubstitutionSide::Rhs);
    CHECK(sub.family == Family::MSM_I);
    const PowerWeightedIFunction w = make_weighted(make_exp_instance(), d.complex(0.5, 3.0, 0.3), side);
    const ApplyResult a = apply_unchecked(der, w);
    const ApplyResult b = apply_unchecked(sub, w);
    CHECK(std::abs(a.prefactor_exponent - b.prefactor_exponent) < 1e-12);
    REQUIRE(a.output.base.upper.size() == b.output.base.upper.size());
    REQUIRE(a.output.base.lower.size() == b.output.base.lower.size());
    for (std::size_t k = 0; k < a.output.base.upper.size(); ++k)
      CHECK(std::abs(a.output.base.upper[k].param - b.output.base.upper[k].param) < 1e-12);
    for (std::size_t k = 0; k < a.output.base.lower.size(); ++k)
      CHECK(std::abs(a.output.base.lower[k].param - b.output.base.lower[k].param) < 1e-12);

    const OperatorSpec back = remark_substitution(sub, SubstitutionSide::Rhs);
    CHECK(back.family == der.family);
    for (int k = 0; k < 5; ++k) CHECK(back.params[k] == der.params[k]);
  }
}

TEST_CASE("Remark substitution examples") {
  const OperatorSpec spec{Family::MSM_I, Side::Left, msm(0.3, 0.2, 0.1, 0.4, 1.6)};
  const OperatorSpec h = remark_substitution(spec, SubstitutionSide::Hypothesis);
  const std::vector<Complex> want = {-0.2, -0.3, -0.4 + 2.0, -0.1, -1.6 + 2.0};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(h.params[k] - want[k]) < 1e-15);
  const OperatorSpec r = remark_substitution(spec, SubstitutionSide::Rhs);
  const std::vector<Complex> want_r = {-0.2, -0.3, -0.4, -0.1, -1.6};
  for (int k = 0; k < 5; ++k) CHECK(std::abs(r.params[k] - want_r[k]) < 1e-15);
  CHECK_THROWS_AS(remark_substitution(OperatorSpec{Family::SAIGO_I, Side::Left, {1.0, 0.0, 0.0}},
                                      SubstitutionSide::Rhs),
                  InvariantError);
}

TEST_CASE("reductions agree at the level of chi") {
  Draws d(404);
  const IFunction base = make_gauss2f1_instance(0.6, 0.9, 1.7, 0.5);
  const auto check_pair = [&](const OperatorSpec& spec, Family expected) {
    const OperatorSpec low = reduce_operator(spec);
    CHECK(low.family == expected);
    const PowerWeightedIFunction w = make_weighted(base, d.complex(0.5, 3.0, 0.3), spec.side);
    const ApplyResult a = apply_unchecked(spec, w);
    const ApplyResult b = apply_unchecked(low, w);
    CHECK(std::abs(a.prefactor_exponent - b.prefactor_exponent) < 1e-12);
    for (int i = 0; i < 5; ++i) {
      const Complex s(0.5, d.uniform(-10.0, 10.0));
      CHECK(rel_err(chi(a.output.base, s), chi(b.output.base, s)) < 1e-12);
    }
  };
  for (int i = 0; i < 20; ++i) {
    for (Side side : {Side::Left, Side::Right}) {
      OperatorSpec i_spec = random_spec(Family::MSM_I, side, d);
      i_spec.params[1] = 0.0;
      check_pair(i_spec, Family::SAIGO_I);
      for (Family f : {Family::MSM_D, Family::MSM_CD}) {
        OperatorSpec spec = random_spec(f, side, d);
        spec.params[0] = 0.0;
        check_pair(spec, f == Family::MSM_D ? Family::SAIGO_D : Family::SAIGO_CD);
      }
      for (Family f : {Family::SAIGO_I, Family::SAIGO_D, Family::SAIGO_CD}) {
        OperatorSpec spec = random_spec(f, side, d);
        spec.params[1] = 0.0;
        check_pair(spec, f == Family::SAIGO_I ? Family::EK_I : f == Family::SAIGO_D ? Family::EK_D : Family::EK_CD);
      }
      for (Family f : {Family::SAIGO_I, Family::SAIGO_D}) {
        OperatorSpec spec = random_spec(f, side, d);
        spec.params[1] = -spec.params[0];
        check_pair(spec, f == Family::SAIGO_I ? Family::RL_I : Family::RL_D);
      }
    }
  }
}

TEST_CASE("reduce_operator examples") {
  const OperatorSpec s = reduce_operator({Family::MSM_I, Side::Left, msm(0.7, 0.0, 0.2, 0.4, 0.5)});
  CHECK(s.family == Family::SAIGO_I);
  CHECK(std::abs(s.params[0] - 0.5) < 1e-15);
  CHECK(std::abs(s.params[1] - 0.2) < 1e-15);
  CHECK(std::abs(s.params[2] + 0.2) < 1e-15);
  const OperatorSpec dd = reduce_operator({Family::MSM_D, Side::Right, msm(0.0, 0.7, 0.2, 0.4, 0.5)});
  CHECK(dd.family == Family::SAIGO_D);
  CHECK(std::abs(dd.params[1] - 0.2) < 1e-15);
  CHECK(std::abs(dd.params[2] + 0.1) < 1e-15);
  const OperatorSpec ek = reduce_operator({Family::SAIGO_I, Side::Left, {0.8, 0.0, 0.3}});
  CHECK(ek.family == Family::EK_I);
  CHECK(ek.params[0] == Complex(0.3));
  CHECK(ek.params[1] == Complex(0.8));
  CHECK_THROWS_AS(reduce_operator({Family::MSM_I, Side::Left, msm(0.7, 0.1, 0.2, 0.4, 0.5)}), InvariantError);
  CHECK_THROWS_AS(reduce_operator({Family::SAIGO_CD, Side::Left, {0.8, -0.8, 0.3}}), InvariantError);
}

TEST_CASE("Caputo moments carry the derivative factor") {
  Draws d(505);
  for (int i = 0; i < 10; ++i) {
    for (Side side : {Side::Left, Side::Right}) {
      const OperatorSpec cd = random_spec(Family::MSM_CD, side, d);
      const int m = derivative_count(cd);
      const Complex rho = d.complex(m + 0.5, m + 3.0, 0.3);
      const OperatorSpec integral = remark_substitution(
          OperatorSpec{Family::MSM_D, side, cd.params}, SubstitutionSide::Hypothesis);
      const bool left = side == Side::Left;
      const PowerMoment inner = power_moment_unchecked(integral, left ? rho - double(m) : rho + double(m));
      const Complex factor = left ? gamma(rho) / gamma(rho - double(m)) : gamma(rho + double(m)) / gamma(rho);
      const PowerMoment pm = power_moment_unchecked(cd, rho);
      CHECK(rel_err(pm.coefficient(), factor * inner.coefficient()) < 1e-12);
      CHECK(std::abs(pm.exponent - inner.exponent) < 1e-13);
    }
  }
}

TEST_CASE("hypothesis reports") {
  const IFunction e = make_exp_instance();
  const OperatorSpec t31{Family::MSM_I, Side::Left, msm(0.1, 0.1, 0.1, 0.1, 0.9)};
  for (const HypothesisCheck& c : check_hypotheses(t31, make_weighted(e, 2.0, Side::Left))) CHECK(c.passed);

  const auto failed = [](const std::vector<HypothesisCheck>& r) {
    std::vector<std::string> names;
    for (const HypothesisCheck& c : r)
      if (!c.passed) names.push_back(c.name);
    return names;
  };
  // With alpha' = beta' the second inequality also sits exactly on its edge.
  const auto zero = failed(check_hypotheses(t31, make_weighted(e, 0.0, Side::Left)));
  REQUIRE(zero.size() == 2);
  CHECK(zero[0] == "Re(rho) > 0");
  CHECK(zero[1] == "Re(rho) > Re(alpha'-beta')");

  // Right-sided MSM derivative: Re(rho) <= Re(alpha+alpha'-gamma)+[Re(gamma)]+1 = 0.1+0.1-0.9+1 = 0.3.
  const OperatorSpec t42{Family::MSM_D, Side::Right, msm(0.1, 0.1, 0.1, 0.1, 0.9)};
  const auto low = failed(check_hypotheses(t42, make_weighted(e, 0.3, Side::Right)));
  REQUIRE(low.size() == 1);
  CHECK(low[0] == "Re(rho) > Re(alpha+alpha'-gamma)+[Re(gamma)]+1");
  CHECK(failed(check_hypotheses(t42, make_weighted(e, 0.31, Side::Right))).empty());

  try {
    apply(t42, make_weighted(e, 0.3, Side::Right));
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& err) {
    CHECK(err.condition() == "Re(rho) > Re(alpha+alpha'-gamma)+[Re(gamma)]+1");
  }
  CHECK_THROWS_AS(apply(t31, make_weighted(e, 2.0, Side::Right)), HypothesisError);
  // A base with mu = 0 is outside every theorem.
  CHECK_THROWS_AS(apply(t31, make_weighted(make_gauss2f1_instance(0.6, 0.9, 1.7), 2.0, Side::Left)),
                  HypothesisError);
}

TEST_CASE("exponent coupling and override") {
  const OperatorSpec spec{Family::SAIGO_I, Side::Left, {0.7, 0.2, 0.4}};
  PowerWeightedIFunction w = make_weighted(make_exp_instance(), 1.5, Side::Left);
  w.exponent = 2.0;
  try {
    apply(spec, w);
    FAIL("expected HypothesisError");
  } catch (const HypothesisError& err) {
    CHECK(err.condition() == "exponent == mu");
  }
  w.exponent_override = true;
  const ApplyResult r = apply(spec, w);
  CHECK(r.output.base.upper[0].scale == 2.0);
  CHECK(r.output.exponent == 2.0);
  w.exponent = -1.0;
  CHECK_THROWS_AS(apply(spec, w), HypothesisError);
}

TEST_CASE("OperatorSpec validation") {
  CHECK_THROWS_AS((OperatorSpec{Family::MSM_I, Side::Left, {1.0, 2.0}}.validate()), InvariantError);
  CHECK(family_from_string("SAIGO_CD") == Family::SAIGO_CD);
  CHECK_THROWS_AS(family_from_string("MSM_X"), InvariantError);
  CHECK(derivative_count(OperatorSpec{Family::MSM_D, Side::Left, msm(0, 0, 0, 0, 1.7)}) == 2);
  CHECK(derivative_count(OperatorSpec{Family::MSM_I, Side::Left, msm(0, 0, 0, 0, 1.7)}) == 0);
}
