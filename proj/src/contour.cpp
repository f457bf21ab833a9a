#include <algorithm>
#include <tuple>
#include <cmath>
#include <limits>
#include <vector>

#include "ifn/errors.hpp"
#include "ifn/ifunction.hpp"
#include "ifn/quadrature_rules.hpp"

namespace ifn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr std::size_t kMaxSamples = std::size_t(1) << 22;

// Trapezoid samples of g(t) = chi(c+it) z^{-c-it} on t = k*h, k = -N..N.
class LineSampler {
 public:
  LineSampler(const IFunction& f, Complex z, double c) : f_(f), log_z_(std::log(z)), c_(c) {}

  Complex g(double t) {
    ++evaluations_;
    const Complex s(c_, t);
    const Complex x = chi(f_, s);
    if (x == 0.0) return 0.0;
    return x * std::exp(-s * log_z_);
  }

  void start(double h, long half) {
    h_ = h;
    half_ = half;
    values_.resize(2 * half + 1);
    for (long k = -half; k <= half; ++k) values_[k + half] = g(k * h);
  }

  void halve_step() {
    std::vector<Complex> next(4 * half_ + 1);
    for (long k = 0; k <= 2 * half_; ++k) next[2 * k] = values_[k];
    const double h = 0.5 * h_;
    for (long k = -2 * half_ + 1; k < 2 * half_; k += 2) next[k + 2 * half_] = g(k * h);
    values_ = std::move(next);
    h_ = h;
    half_ *= 2;
  }

  void extend(long extra) {
    std::vector<Complex> next(2 * (half_ + extra) + 1);
    for (long k = -half_ - extra; k < -half_; ++k) next[k + half_ + extra] = g(k * h_);
    for (long k = -half_; k <= half_; ++k) next[k + half_ + extra] = values_[k + half_];
    for (long k = half_ + 1; k <= half_ + extra; ++k) next[k + half_ + extra] = g(k * h_);
    values_ = std::move(next);
    half_ += extra;
  }

  // (1/2pi) * trapezoid sum, plus the matching sum of |g|.
  std::pair<Complex, double> integral() const {
    std::vector<Complex> terms(values_);
    terms.front() *= 0.5;
    terms.back() *= 0.5;
    double l1 = 0.0;
    for (const Complex& v : terms) l1 += std::abs(v);
    const double scale = h_ / (2.0 * kPi);
    return {scale * pairwise_sum(terms), scale * l1};
  }

  // Largest |g| on the outer tenth of the window.
  double edge_magnitude() const {
    const long from = static_cast<long>(std::floor(0.9 * half_));
    double peak = 0.0;
    for (long k = from; k <= half_; ++k) {
      peak = std::max(peak, std::abs(values_[k + half_]));
      peak = std::max(peak, std::abs(values_[half_ - k]));
    }
    return peak;
  }

  double step() const { return h_; }
  long half() const { return half_; }
  double height() const { return h_ * half_; }
  std::size_t size() const { return values_.size(); }
  int evaluations() const { return evaluations_; }

 private:
  const IFunction& f_;
  Complex log_z_;
  double c_;
  double h_ = 0.0;
  long half_ = 0;
  std::vector<Complex> values_;
  int evaluations_ = 0;
};

}  // namespace

ContourResult evaluate_detailed(const IFunction& f, Complex z, const ContourConfig& cfg) {
  cfg.validate();
  f.validate();
  if (z == 0.0) throw DomainError("evaluate: z must be non-zero");
  const double c = choose_offset(f, cfg);
  std::string why;
  if (!contour_admissible(f, z, c, &why)) throw ConvergenceError("evaluate: contour integral diverges: " + why);

  const ConvergenceReport r = convergence_report(f);
  const double decay = r.delta * kPi / 2.0 - std::abs(std::arg(z));
  const bool exponential = decay > 1e-12 * std::max(1.0, std::abs(r.delta));
  const double power = -(r.omega + c * r.mu);  // |g| ~ |t|^{-power} on the boundary

  double height = cfg.half_height;
  if (height == 0.0) {
    const double target = std::log(1.0 / cfg.tol) + 5.0;
    if (exponential) {
      height = target / decay;
      // |t|^{Omega+c*mu} growth pushes the cut further out.
      height = (target + std::max(0.0, -power) * std::log(std::max(height, 2.0))) / decay;
    } else {
      height = std::exp(target / std::max(power - 1.0, 1e-3));
    }
    height = std::clamp(height, 8.0, 1e4);
  }

  LineSampler line(f, z, c);
  const long half0 = cfg.nodes / 2;
  line.start(height / half0, half0);

  const auto bound = [&](Complex value, double l1) { return cfg.tol * std::abs(value) + 16.0 * kEps * l1; };
  const auto tail = [&]() {
    const double edge = line.edge_magnitude();
    const double t = line.height();
    const double factor = exponential ? 1.0 / decay : t / std::max(power - 1.0, 1e-12);
    return 2.0 * edge * factor / (2.0 * kPi);
  };

  auto [value, l1] = line.integral();
  int doublings = 0;
  int growths = 0;
  while (true) {
    if (line.size() * 2 > kMaxSamples)
      throw ConvergenceError("evaluate: sample budget exhausted before the step converged");
    line.halve_step();
    const auto [next, next_l1] = line.integral();
    const double change = std::abs(next - value);
    value = next;
    l1 = next_l1;
    if (change > bound(value, l1)) {
      if (++doublings >= cfg.max_refinements)
        throw ConvergenceError("evaluate: step refinement did not converge within max_refinements");
      continue;
    }
    double tail_estimate = tail();
    while (tail_estimate > bound(value, l1)) {
      if (++growths >= cfg.max_refinements || line.size() * 3 / 2 > kMaxSamples)
        throw ConvergenceError("evaluate: tail bound above tolerance after max_refinements");
      line.extend(std::max<long>(1, line.half() / 2));
      std::tie(value, l1) = line.integral();
      tail_estimate = tail();
    }
    ContourResult result;
    result.value = value;
    result.offset = c;
    result.half_height = line.height();
    result.evaluations = line.evaluations();
    result.error_estimate = change + tail_estimate;
    return result;
  }
}

}  // namespace ifn
