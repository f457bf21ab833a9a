#pragma once

#include <string>
#include <vector>

#include "ifn/ifunction.hpp"

namespace ifn {

enum class Family { MSM_I, MSM_D, MSM_CD, SAIGO_I, SAIGO_D, SAIGO_CD, EK_I, EK_D, EK_CD, RL_I, RL_D };

enum class Side { Left, Right };

std::string to_string(Family family);
std::string to_string(Side side);
/// Throws InvariantError on an unknown name.
Family family_from_string(const std::string& name);
Side side_from_string(const std::string& name);

/// Number of parameters a family takes: MSM (alpha, alpha', beta, beta', gamma),
/// Saigo (alpha, beta, gamma), EK (gamma, alpha), RL (alpha).
int family_arity(Family family);

bool is_integral(Family family);

struct OperatorSpec {
  Family family = Family::MSM_I;
  Side side = Side::Left;
  std::vector<Complex> params;

  /// Arity check only; order positivity is part of check_hypotheses.
  void validate() const;
};

/// Floor of a non-negative real part; used for [Re(gamma)] + 1 and friends.
int integer_part(double x);

/// Number of derivatives a derivative family takes ([Re(order)] + 1); 0 for
/// integral families.
int derivative_count(const OperatorSpec& spec);

/// t^{rho-1} I(coeff t^{exponent}) for Left orientation,
/// t^{-rho} I(coeff t^{-exponent}) for Right.
struct PowerWeightedIFunction {
  Complex rho = 1.0;
  Side orientation = Side::Left;
  IFunction base;
  double exponent = 1.0;
  /// Allow `exponent` to differ from mu of `base`.
  bool exponent_override = false;
};

/// Weighted function with exponent set to mu of `base`.
PowerWeightedIFunction make_weighted(const IFunction& base, Complex rho, Side orientation);

Complex weighted_value(const PowerWeightedIFunction& w, double t, const ContourConfig& cfg = {});

/// prod Gamma(shift - slope*s) / prod Gamma(shift - slope*s).
struct GammaRatio {
  struct Factor {
    Complex shift;
    double slope;
  };
  std::vector<Factor> numerator;
  std::vector<Factor> denominator;

  /// PoleError at a numerator pole; 0 at a denominator pole.
  Complex evaluate(Complex s) const;
};

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  /// lhs - rhs of the strict inequality (positive means satisfied).
  double margin = 0.0;
};

struct ApplyResult {
  Complex prefactor_exponent = 0.0;
  /// x^{prefactor_exponent} I(...) expressed as a weighted function of x.
  PowerWeightedIFunction output;
  std::vector<HypothesisCheck> hypothesis_report;
  /// The factor multiplying chi(s) of the input: chi_out = chi_in * ratio.
  GammaRatio ratio;
};

/// Operator applied to t^{rho-1} (Left) or t^{-rho} (Right): coefficient
/// `ratio.evaluate(0)` times x^{exponent}. `ratio` has unit slopes, so
/// ratio.evaluate(s) is the coefficient at rho - s.
struct PowerMoment {
  GammaRatio ratio;
  Complex exponent = 0.0;

  Complex coefficient() const { return ratio.evaluate(0.0); }
};

/// The hypothesis list of the matching theorem for a power weight with the
/// given rho; margins are numeric. Does not throw.
std::vector<HypothesisCheck> check_hypotheses(const OperatorSpec& spec, Complex rho);

/// As above plus the weight-level checks: orientation matches side, the
/// exponent is positive ("mu > 0"), and equals mu unless overridden.
std::vector<HypothesisCheck> check_hypotheses(const OperatorSpec& spec, const PowerWeightedIFunction& w);

/// Throws HypothesisError naming the first failed check.
PowerMoment power_moment(const OperatorSpec& spec, Complex rho);
PowerMoment power_moment_unchecked(const OperatorSpec& spec, Complex rho);

/// Gamma ratio of the moment formula evaluated at rho - slope*s.
GammaRatio moment_ratio(const OperatorSpec& spec, Complex rho, double slope);

/// Parameter-shift rule. Inserted upper triples are placed first (n and p
/// grow), inserted lower triples last (q grows, m unchanged).
ApplyResult apply(const OperatorSpec& spec, const PowerWeightedIFunction& w);
/// Same without the hypothesis gate; the report is still filled in.
ApplyResult apply_unchecked(const OperatorSpec& spec, const PowerWeightedIFunction& w);

/// MSM_I(a,0,b,b',g) -> SAIGO_I(g, a-g, -b); MSM_D/CD(0,a',b,b',g) -> SAIGO_D/CD(g, a'-g, b'-g);
/// Saigo with beta = 0 -> EK (gamma, alpha); SAIGO_I/D with beta = -alpha -> RL.
/// Throws InvariantError when no degeneracy applies.
OperatorSpec reduce_operator(const OperatorSpec& spec);

enum class SubstitutionSide { Hypothesis, Rhs };

/// Exchanges MSM_I and MSM_D.
/// Rhs: (a,a',b,b',g) -> (-a',-a,-b',-b,-g), an involution.
/// Hypothesis: Left -> (-a',-a,-b'+k,-b,-g+k), Right -> (-a',-a,-b',-b+k,-g+k), k = [Re g]+1.
OperatorSpec remark_substitution(const OperatorSpec& spec, SubstitutionSide side);

}  // namespace ifn
