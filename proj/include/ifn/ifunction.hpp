#pragma once

#include <string>
#include <vector>

#include "ifn/special_functions.hpp"

namespace ifn {

/// One (parameter, scale, exponent) entry of an I-function parameter list.
struct GammaTriple {
  Complex param = 0.0;
  double scale = 1.0;
  double exponent = 1.0;
};

/// I^{m,n}_{p,q}[z] together with the multiplier `coeff` used when the
/// function is composed with a power of t.
///
/// The integrand is
///   chi(s) = prod_{j<=m} Gamma^{beta_j}(b_j + B_j s) prod_{i<=n} Gamma^{alpha_i}(1 - a_i - A_i s)
///          / (prod_{j>m} Gamma^{beta_j}(1 - b_j - B_j s) prod_{i>n} Gamma^{alpha_i}(a_i + A_i s))
/// and I(z) = (1/2 pi i) int chi(s) z^{-s} ds along a vertical line that
/// keeps the poles of the first product on its left and those of the
/// second product on its right.
struct IFunction {
  int m = 0;
  int n = 0;
  int p = 0;
  int q = 0;
  std::vector<GammaTriple> upper;  // (a_i, A_i, alpha_i), i = 1..p
  std::vector<GammaTriple> lower;  // (b_j, B_j, beta_j), j = 1..q
  Complex coeff = 1.0;

  /// Throws InvariantError naming the violated constraint.
  void validate() const;
};

/// Mellin-Barnes integrand. A pole of a numerator factor throws PoleError
/// naming the factor; a pole of a denominator factor gives 0.
Complex chi(const IFunction& f, Complex s);

struct ConvergenceReport {
  double mu = 0.0;
  double omega = 0.0;
  double delta = 0.0;
  bool analytic = false;
  /// Delta*pi/2 when Delta > 0, otherwise 0.
  double abs_convergent_sector = 0.0;
};

ConvergenceReport convergence_report(const IFunction& f);

/// Whether the contour integral converges absolutely for argument z on the
/// line Re(s) = offset. On the sector boundary |arg z| = Delta*pi/2 this
/// needs Omega < -1 (mu = 0) or Omega + offset*mu < -1 (mu != 0); equality is
/// treated as divergent. `reason` receives a message when false.
bool contour_admissible(const IFunction& f, Complex z, double offset, std::string* reason = nullptr);

/// Rightmost real part among poles that must stay left of the contour and
/// leftmost among those that must stay right (+-infinity when absent).
struct PoleBounds {
  double left_max;
  double right_min;
};

PoleBounds pole_bounds(const IFunction& f);

struct ContourConfig {
  double offset = 0.0;
  /// When true the offset is moved off nearby poles automatically; when false
  /// a pole on or across the line is an error.
  bool auto_offset = true;
  /// Truncation |Im s| <= half_height; 0 picks it from the decay estimate.
  double half_height = 0.0;
  int nodes = 64;
  double tol = 1e-10;
  int max_refinements = 12;

  void validate() const;
};

struct ContourResult {
  Complex value = 0.0;
  double offset = 0.0;
  double half_height = 0.0;
  int evaluations = 0;
  double error_estimate = 0.0;
};

/// Line offset actually used for f under cfg. Throws ContourError when the
/// two pole families cannot be separated by a vertical line, or (fixed
/// offset) when a pole lies within 1e-6 of it or on the wrong side.
double choose_offset(const IFunction& f, const ContourConfig& cfg);

ContourResult evaluate_detailed(const IFunction& f, Complex z, const ContourConfig& cfg = {});

Complex evaluate(const IFunction& f, Complex z, const ContourConfig& cfg = {});

enum class KnownTag { Exp, Gauss2F1, MittagLeffler, MeijerG, FoxH, HBar, None };

std::string to_string(KnownTag tag);

struct KnownForm {
  KnownTag tag = KnownTag::None;
  /// Exp: none. Gauss2F1: (a, b, c) of Gamma(a)Gamma(b)/Gamma(c) 2F1(a,b;c;-z).
  /// MittagLeffler: alpha of E_alpha(-z). Other tags: none.
  std::vector<Complex> parameters;
};

/// Most specific closed form whose structural conditions hold exactly.
KnownForm known_forms(const IFunction& f);

/// I^{1,0}_{0,1}[z | (0,1,1)] = exp(-z).
IFunction make_exp_instance(Complex coeff = 1.0);

/// I^{1,2}_{2,2}[z | (1-a,1,1),(1-b,1,1); (0,1,1),(1-c,1,1)]
///   = Gamma(a)Gamma(b)/Gamma(c) 2F1(a,b;c;-z).
IFunction make_gauss2f1_instance(Complex a, Complex b, Complex c, Complex coeff = 1.0);

/// I^{1,1}_{1,2}[z | (0,1,1); (0,1,1),(0,alpha,1)] = E_alpha(-z).
IFunction make_mittag_leffler_instance(double alpha, Complex coeff = 1.0);

}  // namespace ifn
