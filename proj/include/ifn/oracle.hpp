#pragma once

#include <functional>
#include <string>

#include "ifn/frac_ops.hpp"

namespace ifn {

struct QuadraturePolicy {
  int nodes = 16;
  /// Width of the graded regions next to each endpoint of the unit interval.
  double endpoint_clearance = 0.25;
  double tol = 1e-10;
  /// Node doublings allowed while the panel sums settle.
  int max_refinements = 4;

  void validate() const;
};

struct ComparisonRecord {
  Complex symbolic_value = 0.0;
  Complex oracle_value = 0.0;
  double rel_error = 0.0;
  std::string regime_notes;
};

using RealFunction = std::function<Complex(double)>;

/// MSM fractional integral of f at x by quadrature of the defining integral.
/// Left: t = x*w on (0, x). Right: t = x/w maps (x, inf) onto (0, 1).
/// `notes` (optional) receives the panel and F3 evaluation summary.
Complex msm_integral_quadrature(const OperatorSpec& spec, const RealFunction& f, double x,
                                const QuadraturePolicy& policy = {}, std::string* notes = nullptr);

/// Saigo fractional integral (also EK_I and RL_I through their Saigo form).
Complex saigo_quadrature(const OperatorSpec& spec, const RealFunction& f, double x,
                         const QuadraturePolicy& policy = {}, std::string* notes = nullptr);

/// Derivative families: D families differentiate the integral oracle in x;
/// Caputo families integrate the differentiated f. Derivatives are central
/// differences on steps h*{1,2,4,8}, h = x*min(tol^{1/(k+2)}, 0.45/(4k)),
/// with Richardson extrapolation.
Complex derivative_oracle(const OperatorSpec& spec, const RealFunction& f, double x,
                          const QuadraturePolicy& policy = {}, std::string* notes = nullptr);

/// Dispatches to the matching oracle for any family.
Complex operator_quadrature(const OperatorSpec& spec, const RealFunction& f, double x,
                            const QuadraturePolicy& policy = {}, std::string* notes = nullptr);

/// k-th derivative of f at x by the same difference scheme.
Complex numerical_derivative(const RealFunction& f, double x, int k, double tol);

/// Parameter-shift result evaluated by contour integration against the
/// quadrature oracle applied to the pointwise-evaluated input.
ComparisonRecord brute_check(const OperatorSpec& spec, const PowerWeightedIFunction& w, double x,
                             const QuadraturePolicy& policy = {}, const ContourConfig& cfg = {});

}  // namespace ifn
