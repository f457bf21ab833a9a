#include "ifn/oracle.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "ifn/errors.hpp"
#include "ifn/quadrature_rules.hpp"

namespace ifn {

namespace {

struct Tally {
  std::map<F3Method, int> f3;
  int panels_left = 0;
  int panels_right = 0;
  bool right_jacobi = false;
  int nodes = 0;

  std::string summary() const {
    std::ostringstream out;
    out << "nodes " << nodes << "; left levels " << panels_left << "; right "
        << (right_jacobi ? "gauss-jacobi" : "levels " + std::to_string(panels_right));
    if (!f3.empty()) {
      out << "; F3";
      for (const auto& [method, count] : f3) out << ' ' << to_string(method) << ' ' << count;
    }
    return out.str();
  }
};

// Integrates over (0,1) doubling the per-panel node count until two passes agree.
Complex integrate_unit(const UnitIntegrand& g, const QuadraturePolicy& policy,
                       std::optional<double> right_exponent, Tally& tally) {
  GradedOptions opt;
  opt.nodes = policy.nodes;
  opt.tol = policy.tol;
  opt.clearance = policy.endpoint_clearance;
  opt.max_levels = 200;
  // Kernels take 1 - w as an argument, which stops resolving w near 1e-16.
  opt.min_width = 1e-15;
  opt.right_weight_exponent = right_exponent;
  GradedResult previous = integrate_graded(g, opt);
  for (int r = 0; r < policy.max_refinements; ++r) {
    opt.nodes *= 2;
    const GradedResult current = integrate_graded(g, opt);
    if (std::abs(current.value - previous.value) <= policy.tol * std::abs(current.value)) {
      tally.panels_left = current.left_levels;
      tally.panels_right = current.right_levels;
      tally.right_jacobi = current.right_jacobi;
      tally.nodes = opt.nodes;
      return current.value;
    }
    previous = current;
  }
  throw ConvergenceError("oracle quadrature did not settle within max_refinements node doublings");
}

// (1-w)^{order-1} goes into Gauss-Jacobi weights when the order is real.
std::optional<double> jacobi_exponent(Complex order) {
  if (order.imag() != 0.0) return std::nullopt;
  return order.real() - 1.0;
}

Complex endpoint_factor(Complex order, double one_minus_w) {
  if (order.imag() == 0.0) return 1.0;
  return std::pow(Complex(one_minus_w), order - 1.0);
}

void require_positive_x(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("oracle: x must be a positive real");
}

void store(std::string* notes, const Tally& tally) {
  if (notes) *notes = tally.summary();
}

OperatorSpec saigo_form(const OperatorSpec& spec) {
  switch (spec.family) {
    case Family::SAIGO_I: return spec;
    case Family::EK_I: return {Family::SAIGO_I, spec.side, {spec.params[1], 0.0, spec.params[0]}};
    case Family::RL_I: return {Family::SAIGO_I, spec.side, {spec.params[0], -spec.params[0], 0.0}};
    default: throw DomainError("saigo_quadrature: " + to_string(spec.family) + " is not a Saigo-type integral");
  }
}

// Integral operator whose derivative defines `spec`, and the lower family's
// Saigo form for EK/RL derivatives.
OperatorSpec defining_integral(const OperatorSpec& spec) {
  const auto& P = spec.params;
  const bool left = spec.side == Side::Left;
  switch (spec.family) {
    case Family::MSM_D:
    case Family::MSM_CD:
      return remark_substitution(OperatorSpec{Family::MSM_D, spec.side, P}, SubstitutionSide::Hypothesis);
    case Family::SAIGO_D:
    case Family::SAIGO_CD: {
      const double k = derivative_count(spec);
      return {Family::SAIGO_I, spec.side, {-P[0] + k, -P[1] - k, left ? P[0] + P[2] - k : P[0] + P[2]}};
    }
    case Family::EK_D: return defining_integral({Family::SAIGO_D, spec.side, {P[1], 0.0, P[0]}});
    case Family::EK_CD: return defining_integral({Family::SAIGO_CD, spec.side, {P[1], 0.0, P[0]}});
    case Family::RL_D: return defining_integral({Family::SAIGO_D, spec.side, {P[0], -P[0], 0.0}});
    default: throw DomainError("derivative_oracle: " + to_string(spec.family) + " is not a derivative family");
  }
}

bool is_caputo(Family f) { return f == Family::MSM_CD || f == Family::SAIGO_CD || f == Family::EK_CD; }

}  // namespace

void QuadraturePolicy::validate() const {
  if (nodes < 1) throw InvariantError("quadrature nodes >= 1");
  if (!(endpoint_clearance > 0.0 && endpoint_clearance < 0.5))
    throw InvariantError("endpoint_clearance in (0, 0.5)");
  if (!(tol > 0.0 && tol < 1.0)) throw InvariantError("0 < tol < 1");
  if (max_refinements < 1) throw InvariantError("max_refinements >= 1");
}

Complex msm_integral_quadrature(const OperatorSpec& spec, const RealFunction& f, double x,
                                const QuadraturePolicy& policy, std::string* notes) {
  spec.validate();
  policy.validate();
  if (spec.family != Family::MSM_I) throw DomainError("msm_integral_quadrature: needs an MSM_I spec");
  require_positive_x(x);
  const Complex a = spec.params[0], a1 = spec.params[1], b = spec.params[2], b1 = spec.params[3],
                g = spec.params[4];
  if (!(g.real() > 0.0)) throw HypothesisError("Re(gamma) > 0", "msm_integral_quadrature: Re(gamma) > 0");

  Tally tally;
  const bool left = spec.side == Side::Left;
  const UnitIntegrand integrand = [&](double w, double r) -> Complex {
    // F3(...; 1 - w, 1 - 1/w) with the second argument formed as -(1-w)/w.
    const F3Value k = appell_f3_near_one(a, a1, b, b1, g, w, -r / w);
    ++tally.f3[k.method];
    const Complex power = left ? std::pow(Complex(w), -a1) : std::pow(Complex(w), a - g - 1.0);
    return power * k.value * f(left ? x * w : x / w) * endpoint_factor(g, r);
  };
  const Complex integral = integrate_unit(integrand, policy, jacobi_exponent(g), tally);
  store(notes, tally);
  return std::pow(Complex(x), -a - a1 + g) * rgamma(g) * integral;
}

Complex saigo_quadrature(const OperatorSpec& input, const RealFunction& f, double x,
                         const QuadraturePolicy& policy, std::string* notes) {
  input.validate();
  policy.validate();
  const OperatorSpec spec = saigo_form(input);
  require_positive_x(x);
  const Complex a = spec.params[0], b = spec.params[1], g = spec.params[2];
  if (!(a.real() > 0.0)) throw HypothesisError("Re(alpha) > 0", "saigo_quadrature: Re(alpha) > 0");

  Tally tally;
  const bool left = spec.side == Side::Left;
  const UnitIntegrand integrand = [&](double w, double r) -> Complex {
    const Complex kernel = gauss_2f1_complement(a + b, -g, a, w);
    const Complex power = left ? Complex(1.0) : std::pow(Complex(w), b - 1.0);
    return power * kernel * f(left ? x * w : x / w) * endpoint_factor(a, r);
  };
  const Complex integral = integrate_unit(integrand, policy, jacobi_exponent(a), tally);
  store(notes, tally);
  return std::pow(Complex(x), -b) * rgamma(a) * integral;
}

Complex numerical_derivative(const RealFunction& f, double x, int k, double tol) {
  if (k == 0) return f(x);
  // Largest step 8h keeps the stencil inside (0.55x, 1.45x).
  const double h = x * std::min(std::pow(tol, 1.0 / (k + 2.0)), 0.45 / (4.0 * k));
  std::array<std::array<Complex, 4>, 4> table{};
  for (int i = 0; i < 4; ++i) {
    const double step = h * std::ldexp(1.0, 3 - i);
    Complex sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      const double sign = (j % 2) ? -1.0 : 1.0;
      sum += sign * binom * f(x + (0.5 * k - j) * step);
      binom = binom * (k - j) / (j + 1.0);
    }
    table[i][0] = sum / std::pow(step, k);
    for (int j = 1; j <= i; ++j) {
      const double factor = std::ldexp(1.0, 2 * j) - 1.0;
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / factor;
    }
  }
  const Complex value = table[3][3];
  const double residual = std::abs(value - table[2][2]);
  if (residual > std::sqrt(tol) * std::abs(value) && residual > 1e-300)
    throw ConvergenceError("numerical derivative: step-size breakdown (residual " +
                           std::to_string(residual) + ")");
  return value;
}

Complex derivative_oracle(const OperatorSpec& spec, const RealFunction& f, double x,
                          const QuadraturePolicy& policy, std::string* notes) {
  spec.validate();
  policy.validate();
  require_positive_x(x);
  const OperatorSpec integral = defining_integral(spec);
  const int k = derivative_count(spec);
  const double sign = (spec.side == Side::Right && k % 2) ? -1.0 : 1.0;
  if (is_caputo(spec.family)) {
    const RealFunction derivative = [&](double t) { return numerical_derivative(f, t, k, policy.tol); };
    return sign * operator_quadrature(integral, derivative, x, policy, notes);
  }
  const RealFunction outer = [&](double y) { return operator_quadrature(integral, f, y, policy, notes); };
  return sign * numerical_derivative(outer, x, k, policy.tol);
}

Complex operator_quadrature(const OperatorSpec& spec, const RealFunction& f, double x,
                            const QuadraturePolicy& policy, std::string* notes) {
  switch (spec.family) {
    case Family::MSM_I: return msm_integral_quadrature(spec, f, x, policy, notes);
    case Family::SAIGO_I:
    case Family::EK_I:
    case Family::RL_I: return saigo_quadrature(spec, f, x, policy, notes);
    default: return derivative_oracle(spec, f, x, policy, notes);
  }
}

ComparisonRecord brute_check(const OperatorSpec& spec, const PowerWeightedIFunction& w, double x,
                             const QuadraturePolicy& policy, const ContourConfig& cfg) {
  require_positive_x(x);
  const ApplyResult result = apply(spec, w);
  ComparisonRecord record;
  record.symbolic_value = weighted_value(result.output, x, cfg);
  const RealFunction input = [&](double t) { return weighted_value(w, t, cfg); };
  record.oracle_value = operator_quadrature(spec, input, x, policy, &record.regime_notes);
  record.rel_error = std::abs(record.symbolic_value - record.oracle_value) /
                     std::max(std::abs(record.symbolic_value), 1e-300);
  return record;
}

}  // namespace ifn
