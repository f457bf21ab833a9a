#include "ifn/quadrature_rules.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "ifn/errors.hpp"

namespace ifn {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be positive");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

QuadratureRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi: n must be positive");
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw DomainError("gauss_jacobi: exponents must exceed -1");

  const double ab = alpha + beta;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double denom = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    jacobi(k, k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                            : (beta * beta - alpha * alpha) / denom;
  }
  for (int k = 1; k < n; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) /
           ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      const double s = 2.0 * k + ab;
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           (s * s * (s + 1.0) * (s - 1.0));
    }
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("gauss_jacobi: eigen-decomposition failed");

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& values) {
  auto rec = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::complex<double> {
    if (hi - lo <= 8) {
      std::complex<double> s = 0.0;
      for (std::size_t i = lo; i < hi; ++i) s += values[i];
      return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return self(self, lo, mid) + self(self, mid, hi);
  };
  return rec(rec, 0, values.size());
}

namespace {

using C = std::complex<double>;

// Panel [lo, hi] in the coordinate measured from the nearer endpoint.
// `from_right` means that coordinate is 1 - t.
C panel_sum(const UnitIntegrand& f, const QuadratureRule& rule, double lo, double hi,
            bool from_right, const std::optional<double>& weight_exp) {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  std::vector<C> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double d = mid + half * rule.nodes[i];
    const double t = from_right ? 1.0 - d : d;
    const double r = from_right ? d : 1.0 - d;
    C v = f(t, r);
    if (weight_exp) v *= std::pow(r, *weight_exp);
    terms[i] = rule.weights[i] * half * v;
  }
  return pairwise_sum(terms);
}

struct GradedSide {
  C sum = 0.0;
  int levels = 0;
};

// Tail sum of the contributions after the last one, modelling them as one
// geometric sequence or as a sum of two.
constexpr int kMaxTailTerms = 4;

// Tail of a sequence that obeys c[l+K] = sum_j p_j c[l+K-j], fitted to the
// last 2K contributions. Summing the recurrence over the tail gives
// G (1 - sum p_j) = sum_j p_j (c[n-j] + ... + c[n-1]) for G = sum_{l>=n} c[l].
std::optional<C> recurrence_tail(const std::vector<C>& c, int terms) {
  const int n = static_cast<int>(c.size());
  if (n < 2 * terms) return std::nullopt;
  Eigen::MatrixXcd hankel(terms, terms);
  Eigen::VectorXcd rhs(terms);
  for (int i = 0; i < terms; ++i) {
    const int row = n - terms + i;
    rhs(i) = c[row];
    for (int j = 1; j <= terms; ++j) hankel(i, j - 1) = c[row - j];
  }
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(hankel);
  if (lu.rank() < terms) return std::nullopt;
  const Eigen::VectorXcd p = lu.solve(rhs);
  if (!p.allFinite() || (hankel * p - rhs).norm() > 1e-8 * rhs.norm()) return std::nullopt;

  // Every ratio of the fitted geometric terms must decay.
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(terms, terms);
  for (int j = 0; j < terms; ++j) companion(0, j) = p(j);
  for (int j = 1; j < terms; ++j) companion(j, j - 1) = 1.0;
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> roots(companion, false);
  if (roots.info() != Eigen::Success) return std::nullopt;
  for (int j = 0; j < terms; ++j)
    if (!(std::abs(roots.eigenvalues()(j)) < 0.995)) return std::nullopt;

  C denom = 1.0, numer = 0.0, partial = 0.0;
  for (int j = 1; j <= terms; ++j) {
    partial += c[n - j];
    denom -= p(j - 1);
    numer += p(j - 1) * partial;
  }
  return numer / denom;
}

using TailModels = std::array<std::optional<C>, kMaxTailTerms>;

TailModels tail_models(const std::vector<C>& c) {
  TailModels t;
  for (int k = 1; k <= kMaxTailTerms; ++k) t[k - 1] = recurrence_tail(c, k);
  return t;
}

GradedSide graded_region(const UnitIntegrand& f, const QuadratureRule& rule,
                         const GradedOptions& opt, bool from_right, C reference) {
  // Near an algebraic endpoint singularity the panel contributions approach
  // a sum of a few geometric sequences, so once a tail model predicts the
  // next level to within tolerance the remaining tail is summed in closed form.
  GradedSide side;
  std::vector<C> contributions;
  TailModels previous;
  std::array<int, kMaxTailTerms> held{};
  int small_streak = 0;
  double width = opt.clearance;
  for (int level = 0; level < opt.max_levels; ++level) {
    const C contribution = panel_sum(f, rule, 0.5 * width, width, from_right,
                                     opt.right_weight_exponent);
    contributions.push_back(contribution);
    side.sum += contribution;
    side.levels = level + 1;
    const double scale = std::max(std::abs(reference + side.sum), 1e-300);
    small_streak = std::abs(contribution) <= opt.tol * scale ? small_streak + 1 : 0;
    const bool enough = side.levels >= opt.min_levels;
    if (small_streak >= 2 && enough) return side;

    const TailModels current = tail_models(contributions);
    if (enough && level >= 2) {
      // Lowest order whose prediction held up over two levels; at the width
      // floor the most consistent model is taken instead.
      std::optional<C> best;
      double best_miss = 0.0;
      for (int k = 0; k < kMaxTailTerms; ++k) {
        if (!previous[k] || !current[k] || std::abs(*current[k]) > scale) {
          held[k] = 0;
          continue;
        }
        const double miss = std::abs(*previous[k] - contribution - *current[k]);
        held[k] = miss <= 0.1 * opt.tol * scale ? held[k] + 1 : 0;
        if (held[k] >= 2) {
          side.sum += *current[k];
          return side;
        }
        if (!best || miss < best_miss) {
          best = current[k];
          best_miss = miss;
        }
      }
      if (width <= opt.min_width && best) {
        side.sum += *best;
        return side;
      }
    }
    previous = current;
    width *= 0.5;
  }
  throw ConvergenceError("integrate_graded: endpoint panels did not decay within " +
                         std::to_string(opt.max_levels) + " levels");
}

}  // namespace

GradedResult integrate_graded(const UnitIntegrand& f, const GradedOptions& opt) {
  if (!(opt.clearance > 0.0 && opt.clearance < 0.5))
    throw DomainError("integrate_graded: clearance must lie in (0, 0.5)");
  const QuadratureRule rule = gauss_legendre(opt.nodes);
  GradedResult result;

  const double c = opt.clearance;
  // Interior [c, 1-c] split into panels no wider than the endpoint region.
  const int interior_panels = std::max(1, static_cast<int>(std::ceil((1.0 - 2.0 * c) / c)));
  C interior = 0.0;
  for (int k = 0; k < interior_panels; ++k) {
    const double lo = c + (1.0 - 2.0 * c) * k / interior_panels;
    const double hi = c + (1.0 - 2.0 * c) * (k + 1) / interior_panels;
    interior += panel_sum(f, rule, lo, hi, false, opt.right_weight_exponent);
  }

  C right = 0.0;
  if (opt.right_weight_exponent && *opt.right_weight_exponent != 0.0) {
    // Gauss-Jacobi on [1-c, 1]: 1-t = c(1-xi)/2.
    const double e = *opt.right_weight_exponent;
    const QuadratureRule gj = gauss_jacobi(opt.nodes, e, 0.0);
    std::vector<C> terms(gj.nodes.size());
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
      const double r = 0.5 * c * (1.0 - gj.nodes[i]);
      terms[i] = gj.weights[i] * f(1.0 - r, r);
    }
    right = std::pow(0.5 * c, e + 1.0) * pairwise_sum(terms);
    result.right_jacobi = true;
  } else if (opt.grade_right) {
    GradedSide side = graded_region(f, rule, opt, true, interior);
    right = side.sum;
    result.right_levels = side.levels;
  } else {
    right = panel_sum(f, rule, 0.0, c, true, opt.right_weight_exponent);
  }

  C left = 0.0;
  if (opt.grade_left) {
    GradedSide side = graded_region(f, rule, opt, false, interior + right);
    left = side.sum;
    result.left_levels = side.levels;
  } else {
    left = panel_sum(f, rule, 0.0, c, false, opt.right_weight_exponent);
  }

  result.value = left + interior + right;
  return result;
}

}  // namespace ifn
