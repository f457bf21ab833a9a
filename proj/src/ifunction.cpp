#include "ifn/ifunction.hpp"

#include <cmath>
#include <limits>

#include "ifn/errors.hpp"

namespace ifn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_triple(const GammaTriple& t, const std::string& where) {
  if (!std::isfinite(t.param.real()) || !std::isfinite(t.param.imag()))
    throw InvariantError(where + ": param must be finite");
  if (!(t.scale > 0.0) || !std::isfinite(t.scale)) throw InvariantError(where + ": scale > 0");
  if (!(t.exponent > 0.0) || !std::isfinite(t.exponent))
    throw InvariantError(where + ": exponent > 0");
}

}  // namespace

void IFunction::validate() const {
  if (m < 0 || n < 0 || p < 0 || q < 0) throw InvariantError("orders must be non-negative");
  if (m > q) throw InvariantError("0 <= m <= q");
  if (n > p) throw InvariantError("0 <= n <= p");
  if (static_cast<int>(upper.size()) != p) throw InvariantError("upper list length == p");
  if (static_cast<int>(lower.size()) != q) throw InvariantError("lower list length == q");
  for (int i = 0; i < p; ++i) check_triple(upper[i], "upper[" + std::to_string(i) + "]");
  for (int j = 0; j < q; ++j) check_triple(lower[j], "lower[" + std::to_string(j) + "]");
  if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag()))
    throw InvariantError("coeff must be finite");

  // Poles -(b_j+k)/B_j versus (1-a_i+l)/A_i inside a finite window.
  constexpr int window = 50;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      const GammaTriple& b = lower[j];
      const GammaTriple& a = upper[i];
      for (int k = 0; k < window; ++k) {
        const Complex left = -(b.param + double(k)) / b.scale;
        for (int l = 0; l < window; ++l) {
          const Complex right = (1.0 - a.param + double(l)) / a.scale;
          if (std::abs(left - right) <= 1e-12 * std::max(1.0, std::abs(left)))
            throw InvariantError("pole of lower[" + std::to_string(j) + "] coincides with pole of upper[" +
                                 std::to_string(i) + "]");
        }
      }
    }
  }
}

Complex chi(const IFunction& f, Complex s) {
  Complex log_sum = 0.0;
  const auto numerator = [&](Complex arg, double e, const char* list, int index) {
    if (is_nonpositive_integer(arg))
      throw PoleError(std::string("chi: pole of numerator factor ") + list + "[" +
                      std::to_string(index) + "]");
    log_sum += e * log_gamma(arg);
  };
  for (int j = 0; j < f.m; ++j) {
    const GammaTriple& t = f.lower[j];
    numerator(t.param + t.scale * s, t.exponent, "lower", j);
  }
  for (int i = 0; i < f.n; ++i) {
    const GammaTriple& t = f.upper[i];
    numerator(1.0 - t.param - t.scale * s, t.exponent, "upper", i);
  }
  for (int j = f.m; j < f.q; ++j) {
    const GammaTriple& t = f.lower[j];
    const Complex arg = 1.0 - t.param - t.scale * s;
    if (is_nonpositive_integer(arg)) return 0.0;
    log_sum -= t.exponent * log_gamma(arg);
  }
  for (int i = f.n; i < f.p; ++i) {
    const GammaTriple& t = f.upper[i];
    const Complex arg = t.param + t.scale * s;
    if (is_nonpositive_integer(arg)) return 0.0;
    log_sum -= t.exponent * log_gamma(arg);
  }
  return std::exp(log_sum);
}

ConvergenceReport convergence_report(const IFunction& f) {
  ConvergenceReport r;
  for (int j = 0; j < f.q; ++j) {
    const GammaTriple& t = f.lower[j];
    r.mu += t.exponent * t.scale;
    r.omega -= (0.5 - t.param.real()) * t.exponent;
    r.delta += (j < f.m ? 1.0 : -1.0) * t.exponent * t.scale;
  }
  for (int i = 0; i < f.p; ++i) {
    const GammaTriple& t = f.upper[i];
    r.mu -= t.exponent * t.scale;
    r.omega += (0.5 - t.param.real()) * t.exponent;
    r.delta += (i < f.n ? 1.0 : -1.0) * t.exponent * t.scale;
  }
  r.analytic = r.mu >= 0.0;
  r.abs_convergent_sector = r.delta > 0.0 ? r.delta * kPi / 2.0 : 0.0;
  return r;
}

bool contour_admissible(const IFunction& f, Complex z, double offset, std::string* reason) {
  const auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (z == 0.0) return fail("argument z = 0");
  const ConvergenceReport r = convergence_report(f);
  const double decay = r.delta * kPi / 2.0 - std::abs(std::arg(z));
  const double edge = 1e-12 * std::max(1.0, std::abs(r.delta));
  if (decay > edge) return true;
  if (decay < -edge) return fail("|arg z| exceeds Delta*pi/2");
  const double power = r.mu == 0.0 ? r.omega : r.omega + offset * r.mu;
  if (power < -1.0) return true;
  return fail(r.mu == 0.0 ? "on the sector boundary with mu = 0 the integral needs Omega < -1"
                          : "on the sector boundary the integral needs Omega + c*mu < -1");
}

PoleBounds pole_bounds(const IFunction& f) {
  PoleBounds b{-kInf, kInf};
  for (int j = 0; j < f.m; ++j)
    b.left_max = std::max(b.left_max, -f.lower[j].param.real() / f.lower[j].scale);
  for (int i = 0; i < f.n; ++i)
    b.right_min = std::min(b.right_min, (1.0 - f.upper[i].param.real()) / f.upper[i].scale);
  return b;
}

void ContourConfig::validate() const {
  if (!std::isfinite(offset)) throw InvariantError("contour offset must be finite");
  if (!(half_height >= 0.0) || !std::isfinite(half_height))
    throw InvariantError("half_height > 0 (or 0 for automatic)");
  if (nodes < 16) throw InvariantError("nodes >= 16");
  if (!(tol > 0.0 && tol < 1.0)) throw InvariantError("0 < tol < 1");
  if (max_refinements < 1) throw InvariantError("max_refinements >= 1");
}

double choose_offset(const IFunction& f, const ContourConfig& cfg) {
  const PoleBounds b = pole_bounds(f);
  if (b.left_max >= b.right_min)
    throw ContourError("no vertical line separates the left and right pole families");
  const double c = cfg.offset;
  const double clearance = std::min(c - b.left_max, b.right_min - c);
  if (!cfg.auto_offset) {
    if (clearance < 1e-6)
      throw ContourError("a pole lies on or across the line Re(s) = " + std::to_string(c) +
                         "; shift the offset");
    return c;
  }
  const bool two_sided = std::isfinite(b.left_max) && std::isfinite(b.right_min);
  const double threshold = two_sided ? std::min(0.05, (b.right_min - b.left_max) / 4.0) : 0.05;
  if (clearance >= threshold) return c;
  if (two_sided) return 0.5 * (b.left_max + b.right_min);
  if (std::isfinite(b.left_max)) return b.left_max + 0.5;
  return b.right_min - 0.5;
}

Complex evaluate(const IFunction& f, Complex z, const ContourConfig& cfg) {
  return evaluate_detailed(f, z, cfg).value;
}

std::string to_string(KnownTag tag) {
  switch (tag) {
    case KnownTag::Exp: return "Exp";
    case KnownTag::Gauss2F1: return "Gauss2F1";
    case KnownTag::MittagLeffler: return "MittagLeffler";
    case KnownTag::MeijerG: return "MeijerG";
    case KnownTag::FoxH: return "FoxH";
    case KnownTag::HBar: return "HBar";
    case KnownTag::None: return "None";
  }
  return "None";
}

namespace {

bool unit(const GammaTriple& t) { return t.scale == 1.0 && t.exponent == 1.0; }

bool is_exp(const IFunction& f) {
  return f.m == 1 && f.n == 0 && f.p == 0 && f.q == 1 && unit(f.lower[0]) &&
         f.lower[0].param == 0.0;
}

bool is_gauss(const IFunction& f) {
  return f.m == 1 && f.n == 2 && f.p == 2 && f.q == 2 && unit(f.upper[0]) && unit(f.upper[1]) &&
         unit(f.lower[0]) && unit(f.lower[1]) && f.lower[0].param == 0.0;
}

bool is_mittag_leffler(const IFunction& f) {
  return f.m == 1 && f.n == 1 && f.p == 1 && f.q == 2 && unit(f.upper[0]) &&
         f.upper[0].param == 0.0 && unit(f.lower[0]) && f.lower[0].param == 0.0 &&
         f.lower[1].exponent == 1.0 && f.lower[1].param == 0.0;
}

}  // namespace

KnownForm known_forms(const IFunction& f) {
  if (is_exp(f)) return {KnownTag::Exp, {}};
  if (is_gauss(f))
    return {KnownTag::Gauss2F1, {1.0 - f.upper[0].param, 1.0 - f.upper[1].param, 1.0 - f.lower[1].param}};
  if (is_mittag_leffler(f)) return {KnownTag::MittagLeffler, {f.lower[1].scale}};

  bool exps_one = true, scales_one = true;
  for (const auto* list : {&f.upper, &f.lower}) {
    for (const GammaTriple& t : *list) {
      exps_one = exps_one && t.exponent == 1.0;
      scales_one = scales_one && t.scale == 1.0;
    }
  }
  if (exps_one && scales_one) return {KnownTag::MeijerG, {}};
  if (exps_one) return {KnownTag::FoxH, {}};
  bool hbar = true;
  for (int i = f.n; i < f.p; ++i) hbar = hbar && f.upper[i].exponent == 1.0;
  for (int j = 0; j < f.m; ++j) hbar = hbar && f.lower[j].exponent == 1.0;
  if (hbar) return {KnownTag::HBar, {}};
  return {KnownTag::None, {}};
}

IFunction make_exp_instance(Complex coeff) {
  IFunction f;
  f.m = 1;
  f.q = 1;
  f.lower = {{0.0, 1.0, 1.0}};
  f.coeff = coeff;
  return f;
}

IFunction make_gauss2f1_instance(Complex a, Complex b, Complex c, Complex coeff) {
  IFunction f;
  f.m = 1;
  f.n = 2;
  f.p = 2;
  f.q = 2;
  f.upper = {{1.0 - a, 1.0, 1.0}, {1.0 - b, 1.0, 1.0}};
  f.lower = {{0.0, 1.0, 1.0}, {1.0 - c, 1.0, 1.0}};
  f.coeff = coeff;
  return f;
}

IFunction make_mittag_leffler_instance(double alpha, Complex coeff) {
  IFunction f;
  f.m = 1;
  f.n = 1;
  f.p = 1;
  f.q = 2;
  f.upper = {{0.0, 1.0, 1.0}};
  f.lower = {{0.0, 1.0, 1.0}, {0.0, alpha, 1.0}};
  f.coeff = coeff;
  return f;
}

}  // namespace ifn
