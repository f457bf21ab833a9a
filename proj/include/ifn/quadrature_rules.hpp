#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace ifn {

/// Nodes and weights of an interval rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule (Newton iteration on P_n).
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1, from the eigen-decomposition of the Jacobi matrix.
QuadratureRule gauss_jacobi(int n, double alpha, double beta);

/// Integrand on [0,1] called as f(t, 1-t); both coordinates are passed so
/// that distances to either endpoint keep full relative precision.
using UnitIntegrand = std::function<std::complex<double>(double, double)>;

struct GradedOptions {
  int nodes = 16;           ///< Gauss-Legendre points per panel
  double tol = 1e-12;       ///< relative size below which a level is dropped
  double clearance = 0.25;  ///< width of each endpoint region
  int max_levels = 80;
  int min_levels = 2;
  /// Panels narrower than this end the grading with the best tail model;
  /// for integrands that lose precision close to an endpoint.
  double min_width = 0.0;
  bool grade_left = true;
  bool grade_right = true;
  /// When set, the integrand is multiplied by (1-t)^e and the right endpoint
  /// region is integrated with a Gauss-Jacobi rule for that weight.
  std::optional<double> right_weight_exponent;
};

struct GradedResult {
  std::complex<double> value;
  int left_levels = 0;
  int right_levels = 0;
  bool right_jacobi = false;
};

/// Integrates over [0,1] with geometrically graded panels toward endpoints
/// carrying algebraic singularities of unknown strength. Panel sums that
/// shrink geometrically are extrapolated past the last level.
GradedResult integrate_graded(const UnitIntegrand& f, const GradedOptions& options);

/// Pairwise (cascade) sum; deterministic for a fixed input order.
std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& values);

}  // namespace ifn
