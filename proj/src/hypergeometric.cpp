#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ifn/errors.hpp"
#include "ifn/quadrature_rules.hpp"
#include "ifn/special_functions.hpp"

namespace ifn {

namespace {

bool terminates(Complex a, int& degree) {
  if (is_nonpositive_integer(a)) {
    degree = static_cast<int>(-std::round(a.real()));
    return true;
  }
  return false;
}

Complex series_2f1(Complex a, Complex b, Complex c, Complex x, const SeriesPolicy& policy) {
  Complex sum = 1.0;
  Complex term = 1.0;
  int small = 0;
  for (int k = 0; k < policy.max_terms; ++k) {
    const double kd = static_cast<double>(k);
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(term) <= policy.tol * std::abs(sum)) {
      if (++small >= 2) return sum;
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("gauss_2f1: series did not converge");
}

Complex polynomial_2f1(Complex a, Complex b, Complex c, Complex x, int degree) {
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int k = 0; k < degree; ++k) {
    const double kd = static_cast<double>(k);
    if (is_nonpositive_integer(c + kd)) throw DomainError("gauss_2f1: c hits a pole");
    term *= (a + kd) * (b + kd) / ((c + kd) * (kd + 1.0)) * x;
    sum += term;
  }
  return sum;
}

// Taylor stepping of x(1-x)y'' + (c-(a+b+1)x)y' - ab y = 0 from x = 0.5
// towards x = 1 - w. Positions are tracked by their distance r = 1 - x so a
// tiny w keeps full relative precision.
Complex ode_2f1(Complex a, Complex b, Complex c, double w, const SeriesPolicy& policy) {
  double r0 = 0.5;
  Complex y = series_2f1(a, b, c, 0.5, policy);
  Complex dy = a * b / c * series_2f1(a + 1.0, b + 1.0, c + 1.0, 0.5, policy);
  const Complex ab = a * b;
  const Complex q1 = -(a + b + 1.0);
  while (r0 > w) {
    const double delta = std::min(r0 - w, 0.5 * r0);
    const double x0 = 1.0 - r0;
    const double p0 = x0 * r0;
    const double p1 = r0 - x0;
    const Complex q0 = c - (a + b + 1.0) * x0;
    // e_n = y_n delta^n
    Complex e_prev = y;
    Complex e_cur = dy * delta;
    Complex value = e_prev + e_cur;
    Complex deriv = e_cur;  // sum n e_n, divided by delta at the end
    int small = 0;
    for (int n = 0; n < 2000; ++n) {
      const double nd = static_cast<double>(n);
      const Complex e_next =
          -((p1 * nd * (nd + 1.0) + q0 * (nd + 1.0)) * e_cur * delta +
            (-nd * (nd - 1.0) + q1 * nd - ab) * e_prev * delta * delta) /
          (p0 * (nd + 1.0) * (nd + 2.0));
      value += e_next;
      deriv += (nd + 2.0) * e_next;
      e_prev = e_cur;
      e_cur = e_next;
      if (std::abs(e_next) <= 1e-17 * std::abs(value)) {
        if (++small >= 3) break;
      } else {
        small = 0;
      }
      if (n == 1999) throw ConvergenceError("gauss_2f1: ODE continuation stalled");
    }
    y = value;
    dy = deriv / delta;
    r0 -= delta;
  }
  return y;
}

bool near_integer(Complex d) {
  return std::abs(d - std::round(d.real())) < 0.05;
}

// Coefficients of the 1-x connection formula; fixed for given (a,b,c).
struct Connection {
  Complex first, second;
};

Connection connection(Complex a, Complex b, Complex c) {
  const Complex d = c - a - b;
  const Complex lg_c = log_gamma(c);
  return {std::exp(lg_c + log_gamma(d)) * rgamma(c - a) * rgamma(c - b),
          std::exp(lg_c + log_gamma(-d)) * rgamma(a) * rgamma(b)};
}

// 2F1(a,b;c;1-w) for 0 < w < 0.5. `pre` carries connection coefficients
// for callers that evaluate many points with the same parameters.
Complex complement_2f1(Complex a, Complex b, Complex c, double w, const SeriesPolicy& policy,
                       const Connection* pre = nullptr) {
  const Complex d = c - a - b;
  // For large c the connection coefficients overflow but the series terms
  // decay like k^(a+b-c-1) x^k, so summing directly is cheap.
  if (std::abs(c) > 40.0 + 2.0 * (std::abs(a) + std::abs(b))) {
    SeriesPolicy longer = policy;
    longer.max_terms = std::max(policy.max_terms, 100000);
    return series_2f1(a, b, c, 1.0 - w, longer);
  }
  if (near_integer(d)) return ode_2f1(a, b, c, w, policy);
  const Connection k = pre ? *pre : connection(a, b, c);
  return k.first * series_2f1(a, b, 1.0 - d, w, policy) +
         std::pow(w, d) * k.second * series_2f1(c - a, c - b, d + 1.0, w, policy);
}

Complex complement_checked(Complex a, Complex b, Complex c, double w, const SeriesPolicy& policy,
                           const Connection* pre) {
  if (!(w >= 0.0 && w <= 2.0)) throw DomainError("gauss_2f1_complement: w must lie in [0, 2]");
  if (w >= 0.5 || w == 0.0) return gauss_2f1(a, b, c, 1.0 - w, policy);
  policy.validate();
  int da = 0, db = 0;
  const bool ta = terminates(a, da);
  const bool tb = terminates(b, db);
  if (ta || tb) return polynomial_2f1(a, b, c, 1.0 - w, (ta && tb) ? std::min(da, db) : (ta ? da : db));
  if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a non-positive integer");
  return complement_2f1(a, b, c, w, policy, pre);
}

}  // namespace

Complex gauss_2f1(Complex a, Complex b, Complex c, Complex x, const SeriesPolicy& policy) {
  policy.validate();
  int degree = 0;
  const bool poly = terminates(a, degree) || terminates(b, degree);
  if (poly) {
    int da = 0, db = 0;
    const bool ta = terminates(a, da);
    const bool tb = terminates(b, db);
    degree = (ta && tb) ? std::min(da, db) : (ta ? da : db);
    return polynomial_2f1(a, b, c, x, degree);
  }
  if (is_nonpositive_integer(c)) throw DomainError("gauss_2f1: c is a non-positive integer");
  if (x == 0.0) return 1.0;

  const double ax = std::abs(x);
  if (ax <= 0.5) return series_2f1(a, b, c, x, policy);
  if (x.imag() != 0.0) {
    if (ax < 0.9) return series_2f1(a, b, c, x, policy);
    throw DomainError("gauss_2f1: complex argument outside |x| < 0.9");
  }
  const double xr = x.real();
  if (xr > 1.0) throw DomainError("gauss_2f1: x > 1 is outside the implemented region");
  if (xr == 1.0) {
    const Complex d = c - a - b;
    if (!(d.real() > 0.0)) throw DomainError("gauss_2f1: divergent at x = 1");
    return std::exp(log_gamma(c) + log_gamma(d)) * rgamma(c - a) * rgamma(c - b);
  }
  if (xr > 0.5) return complement_2f1(a, b, c, 1.0 - xr, policy);
  // xr < -0.5: Pfaff, 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a,c-b;c;x/(x-1)).
  // The distance 1 - x/(x-1) = 1/(1-x) is passed directly so large |x| keeps its digits.
  return std::pow(1.0 - xr, -a) * gauss_2f1_complement(a, c - b, c, 1.0 / (1.0 - xr), policy);
}

Complex gauss_2f1_complement(Complex a, Complex b, Complex c, double w, const SeriesPolicy& policy) {
  return complement_checked(a, b, c, w, policy, nullptr);
}

// ---------------------------------------------------------------- Appell F3

Complex appell_f3_series(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x,
                         Complex y, const SeriesPolicy& policy) {
  policy.validate();
  if (is_nonpositive_integer(c)) throw DomainError("appell_f3: c is a non-positive integer");
  if (std::max(std::abs(x), std::abs(y)) >= 1.0)
    throw DomainError("appell_f3: double series needs max(|x|,|y|) < 1");

  // T(m,n) = U_m V_{m,n} with U_m = (a)_m(b)_m x^m/((c)_m m!) and
  // V_{m,n} = (a')_n(b')_n y^n/((c+m)_n n!); both stay bounded.
  std::vector<Complex> row_v;  // V_{m, k-m} for the current diagonal k
  std::vector<Complex> row_u;
  std::vector<Complex> diagonals;
  int small = 0;
  Complex total = 0.0;
  for (int k = 0; k < policy.max_terms; ++k) {
    for (int m = 0; m < k; ++m) {
      const double n = static_cast<double>(k - m);
      row_v[m] *= (a1 + (n - 1.0)) * (b1 + (n - 1.0)) * y / ((c + (m + n - 1.0)) * n);
    }
    if (k == 0) {
      row_u.push_back(1.0);
    } else {
      const double m = static_cast<double>(k - 1);
      row_u.push_back(row_u.back() * (a + m) * (b + m) * x / ((c + m) * (m + 1.0)));
    }
    row_v.push_back(1.0);

    std::vector<Complex> terms(k + 1);
    double abs_sum = 0.0;
    for (int m = 0; m <= k; ++m) {
      terms[m] = row_u[m] * row_v[m];
      abs_sum += std::abs(terms[m]);
    }
    const Complex diag = pairwise_sum(terms);
    diagonals.push_back(diag);
    total += diag;
    if (abs_sum == 0.0 && k > 0) {
      if (++small >= 3) return pairwise_sum(diagonals);
    } else if (abs_sum <= policy.tol * std::abs(total)) {
      if (++small >= 3) return pairwise_sum(diagonals);
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("appell_f3: double series did not converge");
}

namespace {

// Real arguments together with their distances to 1, so x close to 1 keeps
// its digits when the caller knows 1 - x exactly.
struct Arg {
  double value;
  double complement;
};

Arg real_arg(Complex x) { return {x.real(), 1.0 - x.real()}; }

Complex euler_form(Complex a, Complex a1, Complex b, Complex b1, Complex c, Arg x, Arg y,
                   bool mirrored, const SeriesPolicy& policy) {
  if (mirrored) {
    std::swap(a, a1);
    std::swap(b, b1);
    std::swap(x, y);
  }
  const Complex cb = c - b;
  if (!(b.real() > 0.0) || !(cb.real() > 0.0))
    throw DomainError("appell_f3: Euler form needs Re(b) > 0 and Re(c-b) > 0");
  if (!(x.complement > 0.0) || !(y.complement > 0.0))
    throw DomainError("appell_f3: Euler form needs real x, y < 1");
  const double xr = x.value;
  const double yr = y.value;

  // Boundary layers: x -> 1 or y -> -inf near u = 1, x -> -inf or y -> 1 near u = 0.
  const double scale =
      std::min({1.0, x.complement, y.complement, 1.0 / (1.0 + std::abs(xr)), 1.0 / (1.0 + std::abs(yr))});
  GradedOptions opt;
  opt.nodes = 16;
  opt.tol = 1e-13;
  opt.clearance = 0.25;
  opt.min_levels = 2 + static_cast<int>(std::ceil(std::log2(opt.clearance / (0.05 * scale))));
  opt.max_levels = 200;

  const Complex bm1 = b - 1.0;
  const Complex cbm1 = cb - 1.0;
  // Inner 2F1(a',b';c-b;y(1-u)); the connection coefficients of the two
  // transformed forms are computed once per integral.
  std::optional<Connection> near_one, pfaff;
  const auto inner = [&](double one_minus_u, double u) -> Complex {
    const double arg = yr * one_minus_u;
    if (std::abs(arg) <= 0.5) return gauss_2f1(a1, b1, cb, arg, policy);
    if (arg > 0.5) {
      const double w = y.complement + yr * u;
      if (!near_one && w > 0.0 && w < 0.5) near_one = connection(a1, b1, cb);
      return complement_checked(a1, b1, cb, w, policy, near_one ? &*near_one : nullptr);
    }
    const double w = 1.0 / (1.0 - arg);
    if (!pfaff && w > 0.0 && w < 0.5) pfaff = connection(a1, cb - b1, cb);
    return std::pow(1.0 - arg, -a1) * complement_checked(a1, cb - b1, cb, w, policy, pfaff ? &*pfaff : nullptr);
  };
  const auto integrand = [&](double u, double one_minus_u) -> Complex {
    const double lin = one_minus_u + u * x.complement;  // 1 - u x, kept accurate
    return std::pow(u, bm1) * std::pow(one_minus_u, cbm1) * std::pow(lin, -a) * inner(one_minus_u, u);
  };
  const GradedResult r = integrate_graded(integrand, opt);
  return std::exp(log_gamma(c) - log_gamma(b) - log_gamma(cb)) * r.value;
}

F3Value detailed(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x, Complex y,
                 std::optional<double> x_complement, const SeriesPolicy& policy);

}  // namespace

Complex appell_f3_euler(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x,
                        Complex y, bool mirrored, const SeriesPolicy& policy) {
  if (x.imag() != 0.0 || y.imag() != 0.0)
    throw DomainError("appell_f3: Euler form needs real x, y < 1");
  return euler_form(a, a1, b, b1, c, real_arg(x), real_arg(y), mirrored, policy);
}

Complex appell_f3_single_sum(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x,
                             Complex y, const SeriesPolicy& policy) {
  if (!(std::abs(x) < 1.0)) throw DomainError("appell_f3: single sum needs |x| < 1");
  Complex u = 1.0;
  Complex sum = 0.0;
  int small = 0;
  for (int m = 0; m < policy.max_terms; ++m) {
    const double md = static_cast<double>(m);
    if (m > 0) u *= (a + (md - 1.0)) * (b + (md - 1.0)) * x / ((c + (md - 1.0)) * md);
    if (u == 0.0) return sum;
    const Complex term = u * gauss_2f1(a1, b1, c + md, y, policy);
    sum += term;
    if (std::abs(term) <= policy.tol * std::abs(sum)) {
      if (++small >= 3) return sum;
    } else {
      small = 0;
    }
  }
  throw ConvergenceError("appell_f3: single-sum expansion did not converge");
}

F3Value appell_f3_detailed(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x,
                           Complex y, const SeriesPolicy& policy) {
  return detailed(a, a1, b, b1, c, x, y, std::nullopt, policy);
}

F3Value appell_f3_near_one(Complex a, Complex a1, Complex b, Complex b1, Complex c,
                           double one_minus_x, double y, const SeriesPolicy& policy) {
  if (!(one_minus_x > 0.0)) throw DomainError("appell_f3_near_one: needs 1 - x > 0");
  return detailed(a, a1, b, b1, c, 1.0 - one_minus_x, y, one_minus_x, policy);
}

namespace {

F3Value detailed(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x, Complex y,
                 std::optional<double> x_complement, const SeriesPolicy& policy) {
  policy.validate();
  if (is_nonpositive_integer(c)) throw DomainError("appell_f3: c is a non-positive integer");
  if (std::max(std::abs(x), std::abs(y)) < policy.overlap_threshold)
    return {appell_f3_series(a, a1, b, b1, c, x, y, policy), F3Method::Series};

  if (x.imag() != 0.0 || y.imag() != 0.0 || !(x.real() < 1.0) || !(y.real() < 1.0))
    throw DomainError("appell_f3: continuation implemented only for real x, y < 1");

  // F3 is symmetric under a <-> b and a' <-> b', so any of the four may
  // carry the Euler integral. The unprimed forms come first; a carrier close
  // to either endpoint limit is passed over when another has room.
  const Complex carriers[] = {b, a, b1, a1};
  double rooms[4];
  double widest = 0.0;
  for (int i = 0; i < 4; ++i) {
    rooms[i] = std::min(carriers[i].real(), (c - carriers[i]).real());
    widest = std::max(widest, rooms[i]);
  }
  int best = -1;
  for (int i = 0; i < 4 && best < 0; ++i)
    if (rooms[i] > 0.0 && rooms[i] >= std::min(0.1, widest)) best = i;
  const Arg xa = x_complement ? Arg{x.real(), *x_complement} : real_arg(x);
  const Arg ya = real_arg(y);
  switch (best) {
    case 0: return {euler_form(a, a1, b, b1, c, xa, ya, false, policy), F3Method::EulerFirst};
    case 1: return {euler_form(b, a1, a, b1, c, xa, ya, false, policy), F3Method::EulerFirst};
    case 2: return {euler_form(a, a1, b, b1, c, xa, ya, true, policy), F3Method::EulerSecond};
    case 3: return {euler_form(a, b1, b, a1, c, xa, ya, true, policy), F3Method::EulerSecond};
    default: break;
  }
  if (std::abs(x) < 1.0) {
    SeriesPolicy longer = policy;
    longer.max_terms = std::max(policy.max_terms, 20000);
    return {appell_f3_single_sum(a, a1, b, b1, c, x, y, longer), F3Method::SingleSum};
  }
  if (std::abs(y) < 1.0) {
    SeriesPolicy longer = policy;
    longer.max_terms = std::max(policy.max_terms, 20000);
    return {appell_f3_single_sum(a1, a, b1, b, c, y, x, longer), F3Method::SingleSum};
  }
  throw ConvergenceError("appell_f3: no continuation applies for these parameters");
}

}  // namespace

Complex appell_f3(Complex a, Complex a1, Complex b, Complex b1, Complex c, Complex x, Complex y,
                  const SeriesPolicy& policy) {
  return appell_f3_detailed(a, a1, b, b1, c, x, y, policy).value;
}

}  // namespace ifn
