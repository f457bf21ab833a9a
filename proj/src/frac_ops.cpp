#include "ifn/frac_ops.hpp"

#include <cmath>

#include "ifn/errors.hpp"

namespace ifn {

namespace {

constexpr double kZero = 1e-12;

bool is_zero(Complex z) { return std::abs(z) <= kZero; }

struct FamilyInfo {
  Family family;
  const char* name;
  int arity;
  bool integral;
};

constexpr FamilyInfo kFamilies[] = {
    {Family::MSM_I, "MSM_I", 5, true},       {Family::MSM_D, "MSM_D", 5, false},
    {Family::MSM_CD, "MSM_CD", 5, false},    {Family::SAIGO_I, "SAIGO_I", 3, true},
    {Family::SAIGO_D, "SAIGO_D", 3, false},  {Family::SAIGO_CD, "SAIGO_CD", 3, false},
    {Family::EK_I, "EK_I", 2, true},         {Family::EK_D, "EK_D", 2, false},
    {Family::EK_CD, "EK_CD", 2, false},      {Family::RL_I, "RL_I", 1, true},
    {Family::RL_D, "RL_D", 1, false},
};

const FamilyInfo& info(Family family) {
  for (const FamilyInfo& f : kFamilies)
    if (f.family == family) return f;
  throw InvariantError("unknown operator family");
}

// Order parameter: gamma for MSM, alpha otherwise (second slot for EK).
Complex order_of(const OperatorSpec& spec) {
  switch (spec.family) {
    case Family::MSM_I:
    case Family::MSM_D:
    case Family::MSM_CD: return spec.params[4];
    case Family::EK_I:
    case Family::EK_D:
    case Family::EK_CD: return spec.params[1];
    default: return spec.params[0];
  }
}

// Prefactor exponent and inserted triple parameters of the shift rule.
struct Shape {
  Complex pref;
  std::vector<Complex> upper;
  std::vector<Complex> lower;
};

Shape shape(const OperatorSpec& spec, Complex r) {
  const auto& P = spec.params;
  const bool left = spec.side == Side::Left;
  const double k = derivative_count(spec);
  switch (spec.family) {
    case Family::MSM_I: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {-a - a1 + g + r - 1.0,
                {1.0 - r, 1.0 + a1 - b1 - r, 1.0 + a + a1 + b - g - r},
                {1.0 - b1 - r, 1.0 + a + a1 - g - r, 1.0 + a1 + b - g - r}};
      return {-a - a1 + g - r,
              {1.0 + b - r, 1.0 - a - a1 + g - r, 1.0 - a - b1 + g - r},
              {1.0 - r, 1.0 - a + b - r, 1.0 - a - a1 - b1 + g - r}};
    }
    case Family::MSM_D: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {a + a1 - g + r - 1.0,
                {1.0 - r, 1.0 - a + b - r, 1.0 - a - a1 - b1 + g - r},
                {1.0 + b - r, 1.0 - a - a1 + g - r, 1.0 - a - b1 + g - r}};
      return {a + a1 - g - r,
              {1.0 - b1 - r, 1.0 + a + a1 - g - r, 1.0 + a1 + b - g - r},
              {1.0 - r, 1.0 + a1 - b1 - r, 1.0 + a + a1 + b - g - r}};
    }
    case Family::MSM_CD: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {a + a1 - g + r - 1.0,
                {1.0 - r, 1.0 - a + b - r + k, 1.0 - a - a1 - b1 + g - r + k},
                {1.0 + b - r + k, 1.0 - a - a1 + g - r, 1.0 - a - b1 + g - r + k}};
      return {a + a1 - g - r,
              {1.0 - b1 - r - k, 1.0 + a + a1 - g - r, 1.0 + a1 + b - g - r - k},
              {1.0 - r, 1.0 + a1 - b1 - r - k, 1.0 + a + a1 + b - g - r - k}};
    }
    case Family::SAIGO_I: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left) return {-b + r - 1.0, {1.0 - r, 1.0 + b - g - r}, {1.0 + b - r, 1.0 - a - g - r}};
      return {-b - r, {1.0 - g - r, 1.0 - b - r}, {1.0 - r, 1.0 - a - b - g - r}};
    }
    case Family::SAIGO_D: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left) return {b + r - 1.0, {1.0 - r, 1.0 - a - b - g - r}, {1.0 - g - r, 1.0 - b - r}};
      return {b - r, {1.0 + b - r, 1.0 - a - g - r}, {1.0 - r, 1.0 + b - g - r}};
    }
    case Family::SAIGO_CD: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left) return {b + r - 1.0, {1.0 - r, 1.0 - a - b - g - r + k}, {1.0 - b - r, 1.0 - g - r + k}};
      return {b - r, {1.0 + b - r, 1.0 - a - g - r - k}, {1.0 - r, 1.0 + b - g - r - k}};
    }
    case Family::EK_I: {
      const Complex g = P[0], a = P[1];
      return {left ? r - 1.0 : -r, {1.0 - g - r}, {1.0 - a - g - r}};
    }
    case Family::EK_D: {
      const Complex g = P[0], a = P[1];
      return {left ? r - 1.0 : -r, {1.0 - a - g - r}, {1.0 - g - r}};
    }
    case Family::EK_CD: {
      const Complex g = P[0], a = P[1];
      if (left) return {r - 1.0, {1.0 - a - g - r + k}, {1.0 - g - r + k}};
      return {-r, {1.0 - a - g - r - k}, {1.0 - g - r - k}};
    }
    case Family::RL_I: {
      const Complex a = P[0];
      if (left) return {a + r - 1.0, {1.0 - r}, {1.0 - a - r}};
      return {a - r, {1.0 + a - r}, {1.0 - r}};
    }
    case Family::RL_D: {
      const Complex a = P[0];
      if (left) return {-a + r - 1.0, {1.0 - r}, {1.0 + a - r}};
      return {-a - r, {1.0 - a - r}, {1.0 - r}};
    }
  }
  throw InvariantError("unknown operator family");
}

struct Condition {
  const char* name;
  double lhs;
  double rhs;
};

std::vector<Condition> conditions(const OperatorSpec& spec, Complex rho) {
  const auto& P = spec.params;
  const bool left = spec.side == Side::Left;
  const double r = rho.real();
  const double k = derivative_count(spec);
  const auto re = [](Complex z) { return z.real(); };
  switch (spec.family) {
    case Family::MSM_I: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {{"Re(gamma) > 0", re(g), 0.0},
                {"Re(rho) > 0", r, 0.0},
                {"Re(rho) > Re(alpha'-beta')", r, re(a1 - b1)},
                {"Re(rho) > Re(alpha+alpha'+beta-gamma)", r, re(a + a1 + b - g)}};
      return {{"Re(gamma) > 0", re(g), 0.0},
              {"Re(rho) > Re(beta)", r, re(b)},
              {"Re(rho) > Re(-alpha-alpha'+gamma)", r, re(-a - a1 + g)},
              {"Re(rho) > Re(-alpha-beta'+gamma)", r, re(-a - b1 + g)}};
    }
    case Family::MSM_D: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {{"Re(gamma) > 0", re(g), 0.0},
                {"Re(rho) > 0", r, 0.0},
                {"Re(rho) > Re(-alpha+beta)", r, re(-a + b)},
                {"Re(rho) > Re(-alpha-alpha'-beta'+gamma)", r, re(-a - a1 - b1 + g)}};
      return {{"Re(gamma) > 0", re(g), 0.0},
              {"Re(rho) > Re(-beta')", r, re(-b1)},
              {"Re(rho) > Re(alpha'+beta-gamma)", r, re(a1 + b - g)},
              {"Re(rho) > Re(alpha+alpha'-gamma)+[Re(gamma)]+1", r, re(a + a1 - g) + k}};
    }
    case Family::MSM_CD: {
      const Complex a = P[0], a1 = P[1], b = P[2], b1 = P[3], g = P[4];
      if (left)
        return {{"Re(gamma) > 0", re(g), 0.0},
                {"Re(rho)-m > 0", r - k, 0.0},
                {"Re(rho)-m > Re(-alpha+beta)", r - k, re(-a + b)},
                {"Re(rho)-m > Re(-alpha-alpha'-beta'+gamma)", r - k, re(-a - a1 - b1 + g)}};
      return {{"Re(gamma) > 0", re(g), 0.0},
              {"Re(rho)+m > Re(-beta')", r + k, re(-b1)},
              {"Re(rho)+m > Re(alpha'+beta-gamma)", r + k, re(a1 + b - g)},
              {"Re(rho)+m > Re(alpha+alpha'-gamma)+m", r + k, re(a + a1 - g) + k}};
    }
    case Family::SAIGO_I: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left)
        return {{"Re(alpha) > 0", re(a), 0.0},
                {"Re(rho) > 0", r, 0.0},
                {"Re(rho) > Re(beta-gamma)", r, re(b - g)}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho) > Re(-beta)", r, re(-b)},
              {"Re(rho) > Re(-gamma)", r, re(-g)}};
    }
    case Family::SAIGO_D: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left)
        return {{"Re(alpha) > 0", re(a), 0.0},
                {"Re(rho) > 0", r, 0.0},
                {"Re(rho) > Re(-alpha-beta-gamma)", r, re(-a - b - g)}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho) > Re(-alpha-gamma)", r, re(-a - g)},
              {"Re(rho) > Re(beta)+[Re(alpha)]+1", r, re(b) + k}};
    }
    case Family::SAIGO_CD: {
      const Complex a = P[0], b = P[1], g = P[2];
      if (left)
        return {{"Re(alpha) > 0", re(a), 0.0},
                {"Re(rho)-m > 0", r - k, 0.0},
                {"Re(rho)-m > Re(-alpha-beta-gamma)", r - k, re(-a - b - g)}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho)+m > Re(beta)+m", r + k, re(b) + k},
              {"Re(rho) > Re(-alpha-gamma)", r, re(-a - g)}};
    }
    case Family::EK_I: {
      const Complex g = P[0], a = P[1];
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho) > 0", r, 0.0},
              {"Re(rho) > Re(-gamma)", r, re(-g)}};
    }
    case Family::EK_D: {
      const Complex g = P[0], a = P[1];
      if (left)
        return {{"Re(alpha) > 0", re(a), 0.0},
                {"Re(rho) > 0", r, 0.0},
                {"Re(rho) > Re(-alpha-gamma)", r, re(-a - g)}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho) > [Re(alpha)]+1", r, k},
              {"Re(rho) > Re(-alpha-gamma)", r, re(-a - g)}};
    }
    case Family::EK_CD: {
      const Complex g = P[0], a = P[1];
      if (left)
        return {{"Re(alpha) > 0", re(a), 0.0},
                {"Re(rho)-m > 0", r - k, 0.0},
                {"Re(rho)-m > Re(-alpha-gamma)", r - k, re(-a - g)}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho)+m > m", r + k, k},
              {"Re(rho) > Re(-alpha-gamma)", r, re(-a - g)}};
    }
    case Family::RL_I: {
      const Complex a = P[0];
      if (left) return {{"Re(alpha) > 0", re(a), 0.0}, {"Re(rho) > 0", r, 0.0}};
      return {{"Re(alpha) > 0", re(a), 0.0}, {"Re(rho) > Re(alpha)", r, re(a)}};
    }
    case Family::RL_D: {
      const Complex a = P[0];
      if (left) return {{"Re(alpha) > 0", re(a), 0.0}, {"Re(rho) > 0", r, 0.0}};
      return {{"Re(alpha) > 0", re(a), 0.0},
              {"Re(rho) > [Re(alpha)]+1-Re(alpha)", r, k - re(a)}};
    }
  }
  return {};
}

void throw_first_failure(const std::vector<HypothesisCheck>& report) {
  for (const HypothesisCheck& c : report)
    if (!c.passed) throw HypothesisError(c.name, "hypothesis failed: " + c.name);
}

}  // namespace

std::string to_string(Family family) { return info(family).name; }

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

Family family_from_string(const std::string& name) {
  for (const FamilyInfo& f : kFamilies)
    if (name == f.name) return f.family;
  throw InvariantError("unknown operator family '" + name + "'");
}

Side side_from_string(const std::string& name) {
  if (name == "left") return Side::Left;
  if (name == "right") return Side::Right;
  throw InvariantError("side must be 'left' or 'right'");
}

int family_arity(Family family) { return info(family).arity; }

bool is_integral(Family family) { return info(family).integral; }

void OperatorSpec::validate() const {
  const int arity = family_arity(family);
  if (static_cast<int>(params.size()) != arity)
    throw InvariantError(to_string(family) + " takes " + std::to_string(arity) + " parameters");
  for (const Complex& z : params)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw InvariantError("operator parameters must be finite");
}

int integer_part(double x) { return static_cast<int>(std::floor(x)); }

int derivative_count(const OperatorSpec& spec) {
  if (is_integral(spec.family)) return 0;
  return integer_part(order_of(spec).real()) + 1;
}

PowerWeightedIFunction make_weighted(const IFunction& base, Complex rho, Side orientation) {
  PowerWeightedIFunction w;
  w.rho = rho;
  w.orientation = orientation;
  w.base = base;
  w.exponent = convergence_report(base).mu;
  return w;
}

Complex weighted_value(const PowerWeightedIFunction& w, double t, const ContourConfig& cfg) {
  if (w.orientation == Side::Left)
    return std::pow(Complex(t), w.rho - 1.0) * evaluate(w.base, w.base.coeff * std::pow(t, w.exponent), cfg);
  return std::pow(Complex(t), -w.rho) * evaluate(w.base, w.base.coeff * std::pow(t, -w.exponent), cfg);
}

Complex GammaRatio::evaluate(Complex s) const {
  Complex log_sum = 0.0;
  for (const Factor& f : numerator) {
    const Complex arg = f.shift - f.slope * s;
    if (is_nonpositive_integer(arg)) throw PoleError("gamma ratio: numerator pole");
    log_sum += log_gamma(arg);
  }
  for (const Factor& f : denominator) {
    const Complex arg = f.shift - f.slope * s;
    if (is_nonpositive_integer(arg)) return 0.0;
    log_sum -= log_gamma(arg);
  }
  return std::exp(log_sum);
}

std::vector<HypothesisCheck> check_hypotheses(const OperatorSpec& spec, Complex rho) {
  spec.validate();
  std::vector<HypothesisCheck> report;
  for (const Condition& c : conditions(spec, rho)) {
    const double margin = c.lhs - c.rhs;
    report.push_back({c.name, margin > 0.0, margin});
  }
  return report;
}

std::vector<HypothesisCheck> check_hypotheses(const OperatorSpec& spec, const PowerWeightedIFunction& w) {
  std::vector<HypothesisCheck> report;
  const bool oriented = w.orientation == spec.side;
  report.push_back({"orientation matches side", oriented, oriented ? 1.0 : -1.0});
  report.push_back({"mu > 0", w.exponent > 0.0, w.exponent});
  if (!w.exponent_override) {
    const double gap = std::abs(w.exponent - convergence_report(w.base).mu);
    report.push_back({"exponent == mu", gap <= kZero, kZero - gap});
  }
  for (HypothesisCheck& c : check_hypotheses(spec, w.rho)) report.push_back(std::move(c));
  return report;
}

GammaRatio moment_ratio(const OperatorSpec& spec, Complex rho, double slope) {
  spec.validate();
  const Shape sh = shape(spec, rho);
  GammaRatio ratio;
  for (const Complex& u : sh.upper) ratio.numerator.push_back({1.0 - u, slope});
  for (const Complex& l : sh.lower) ratio.denominator.push_back({1.0 - l, slope});
  return ratio;
}

PowerMoment power_moment_unchecked(const OperatorSpec& spec, Complex rho) {
  PowerMoment pm;
  pm.ratio = moment_ratio(spec, rho, 1.0);
  pm.exponent = shape(spec, rho).pref;
  return pm;
}

PowerMoment power_moment(const OperatorSpec& spec, Complex rho) {
  throw_first_failure(check_hypotheses(spec, rho));
  return power_moment_unchecked(spec, rho);
}

ApplyResult apply_unchecked(const OperatorSpec& spec, const PowerWeightedIFunction& w) {
  spec.validate();
  w.base.validate();
  ApplyResult result;
  result.hypothesis_report = check_hypotheses(spec, w);
  const Shape sh = shape(spec, w.rho);
  const double mu = w.exponent;
  const int k = static_cast<int>(sh.upper.size());

  IFunction out = w.base;
  std::vector<GammaTriple> upper;
  for (const Complex& u : sh.upper) upper.push_back({u, mu, 1.0});
  upper.insert(upper.end(), w.base.upper.begin(), w.base.upper.end());
  out.upper = std::move(upper);
  for (const Complex& l : sh.lower) out.lower.push_back({l, mu, 1.0});
  out.n += k;
  out.p += k;
  out.q += static_cast<int>(sh.lower.size());

  result.prefactor_exponent = sh.pref;
  result.output.base = std::move(out);
  result.output.orientation = w.orientation;
  result.output.exponent = w.exponent;
  result.output.exponent_override = w.exponent_override;
  result.output.rho = w.orientation == Side::Left ? sh.pref + 1.0 : -sh.pref;
  result.ratio = moment_ratio(spec, w.rho, mu);
  return result;
}

ApplyResult apply(const OperatorSpec& spec, const PowerWeightedIFunction& w) {
  spec.validate();
  throw_first_failure(check_hypotheses(spec, w));
  return apply_unchecked(spec, w);
}

OperatorSpec reduce_operator(const OperatorSpec& spec) {
  spec.validate();
  const auto& P = spec.params;
  OperatorSpec out;
  out.side = spec.side;
  switch (spec.family) {
    case Family::MSM_I:
      if (!is_zero(P[1])) break;
      out.family = Family::SAIGO_I;
      out.params = {P[4], P[0] - P[4], -P[2]};
      return out;
    case Family::MSM_D:
    case Family::MSM_CD:
      if (!is_zero(P[0])) break;
      out.family = spec.family == Family::MSM_D ? Family::SAIGO_D : Family::SAIGO_CD;
      out.params = {P[4], P[1] - P[4], P[3] - P[4]};
      return out;
    case Family::SAIGO_I:
    case Family::SAIGO_D:
    case Family::SAIGO_CD:
      if (is_zero(P[1])) {
        out.family = spec.family == Family::SAIGO_I   ? Family::EK_I
                     : spec.family == Family::SAIGO_D ? Family::EK_D
                                                      : Family::EK_CD;
        out.params = {P[2], P[0]};
        return out;
      }
      if (is_zero(P[1] + P[0]) && spec.family != Family::SAIGO_CD) {
        out.family = spec.family == Family::SAIGO_I ? Family::RL_I : Family::RL_D;
        out.params = {P[0]};
        return out;
      }
      break;
    default: break;
  }
  throw InvariantError("no reduction applies to " + to_string(spec.family) + " with these parameters");
}

OperatorSpec remark_substitution(const OperatorSpec& spec, SubstitutionSide side) {
  spec.validate();
  if (spec.family != Family::MSM_I && spec.family != Family::MSM_D)
    throw InvariantError("remark_substitution applies to MSM_I and MSM_D only");
  const auto& P = spec.params;
  OperatorSpec out;
  out.family = spec.family == Family::MSM_I ? Family::MSM_D : Family::MSM_I;
  out.side = spec.side;
  out.params = {-P[1], -P[0], -P[3], -P[2], -P[4]};
  if (side == SubstitutionSide::Hypothesis) {
    const double k = integer_part(P[4].real()) + 1;
    if (spec.side == Side::Left)
      out.params[2] += k;
    else
      out.params[3] += k;
    out.params[4] += k;
  }
  return out;
}

}  // namespace ifn
