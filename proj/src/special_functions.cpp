#include <array>
#include <cmath>

#include "ifn/errors.hpp"
#include "ifn/special_functions.hpp"

namespace ifn {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,          -1.0 / 360.0,        1.0 / 1260.0,       -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,   1.0 / 156.0,        -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex power = inv;
  for (double c : kStirling) {
    series += c * power;
    power *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series;
}

}  // namespace

void SeriesPolicy::validate() const {
  if (max_terms < 1) throw DomainError("SeriesPolicy: max_terms must be >= 1");
  if (!(tol > 0.0 && tol < 1.0)) throw DomainError("SeriesPolicy: tol must lie in (0,1)");
  if (!(overlap_threshold > 0.0 && overlap_threshold < 1.0))
    throw DomainError("SeriesPolicy: overlap_threshold must lie in (0,1)");
}

bool is_nonpositive_integer(Complex z) {
  const double re = z.real();
  if (re > 0.5) return false;
  const double scale = std::max(1.0, std::abs(re));
  if (std::abs(z.imag()) > 1e-14 * scale) return false;
  return std::abs(re - std::round(re)) <= 1e-14 * scale;
}

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));

  // Shift right until Stirling's series is accurate to double precision;
  // principal logs of z+k keep the result continuous off the negative axis.
  Complex shift_sum = 0.0;
  const bool near_axis = std::abs(z.imag()) < 10.0;
  const double target = near_axis ? 10.0 : 0.0;
  while (z.real() < target) {
    shift_sum += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift_sum;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

Complex gamma_power(Complex z, double e) {
  if (e == 0.0) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma_power: pole");
    return 1.0;
  }
  return std::exp(e * log_gamma(z));
}

Complex pochhammer(Complex z, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  Complex p = 1.0;
  for (int k = 0; k < n; ++k) p *= z + static_cast<double>(k);
  return p;
}

std::string to_string(F3Method method) {
  switch (method) {
    case F3Method::Series: return "series";
    case F3Method::EulerFirst: return "euler";
    case F3Method::EulerSecond: return "euler-mirrored";
    case F3Method::SingleSum: return "single-sum";
  }
  return "unknown";
}

}  // namespace ifn
