#pragma once

#include <complex>
#include <string>

namespace ifn {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Controls series summation and the F3 series/continuation switch.
struct SeriesPolicy {
  int max_terms = 5000;
  double tol = 1e-15;
  /// F3 uses the double series only while max(|x|,|y|) stays below this.
  double overlap_threshold = 0.95;

  void validate() const;
};

/// True when z is (to rounding) one of 0, -1, -2, ...
bool is_nonpositive_integer(Complex z);

/// Analytic continuation of ln Gamma(z). The imaginary part is unwrapped
/// (continuous off the negative real axis), so it is not log(Gamma(z)).
/// Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);

Complex gamma(Complex z);

/// 1/Gamma(z); exactly zero at the poles of Gamma.
Complex rgamma(Complex z);

/// Gamma(z)^e taken as exp(e * log_gamma(z)).
Complex gamma_power(Complex z, double e);

/// Rising factorial (z)_n.
Complex pochhammer(Complex z, int n);

/// Gauss hypergeometric function 2F1(a,b;c;x).
///
/// Direct series for |x| <= 0.5 (or a terminating series anywhere), the
/// 1-x connection formula on (0.5, 1) with a Taylor-stepped solution of the
/// hypergeometric ODE when c-a-b is close to an integer, Gauss's sum at
/// x = 1 and the Pfaff transformation for x < -0.5. Complex x off the real
/// line is accepted only inside |x| < 0.9. Large c on (0.5, 1) sums the
/// series directly.
Complex gauss_2f1(Complex a, Complex b, Complex c, Complex x,
                  const SeriesPolicy& policy = {});

/// 2F1(a,b;c;1-w), accurate for small w > 0 where 1-w itself would round.
Complex gauss_2f1_complement(Complex a, Complex b, Complex c, double w,
                             const SeriesPolicy& policy = {});

/// How appell_f3 produced its value.
enum class F3Method { Series, EulerFirst, EulerSecond, SingleSum };

std::string to_string(F3Method method);

struct F3Value {
  Complex value;
  F3Method method;
};

/// Appell F3(a,a',b,b';c;x,y) with the evaluation path that was used.
///
/// Inside max(|x|,|y|) < overlap_threshold the double series is summed along
/// diagonals m+n=k. Otherwise x and y must be real with x, y < 1 and the
/// value comes from the Euler integral
///   Gamma(c)/(Gamma(b)Gamma(c-b)) int_0^1 u^(b-1)(1-u)^(c-b-1)
///       (1-ux)^(-a) 2F1(a',b';c-b;y(1-u)) du
/// (or its mirror in the primed parameters; a and b may trade places, and
/// so may a' and b'), falling back to the single sum
/// over m of (a)_m(b)_m/((c)_m m!) x^m 2F1(a',b';c+m;y).
F3Value appell_f3_detailed(Complex a, Complex a1, Complex b, Complex b1,
                           Complex c, Complex x, Complex y,
                           const SeriesPolicy& policy = {});

/// appell_f3_detailed at x = 1 - one_minus_x for real y, with the distance
/// to 1 taken as given so the x -> 1 layer keeps full relative accuracy.
F3Value appell_f3_near_one(Complex a, Complex a1, Complex b, Complex b1,
                           Complex c, double one_minus_x, double y,
                           const SeriesPolicy& policy = {});

Complex appell_f3(Complex a, Complex a1, Complex b, Complex b1, Complex c,
                  Complex x, Complex y, const SeriesPolicy& policy = {});

/// The double series alone; exposed for validating the continuation.
Complex appell_f3_series(Complex a, Complex a1, Complex b, Complex b1,
                         Complex c, Complex x, Complex y,
                         const SeriesPolicy& policy = {});

/// The Euler integral (first or mirrored form) alone; throws DomainError
/// when the chosen form's parameter conditions fail.
Complex appell_f3_euler(Complex a, Complex a1, Complex b, Complex b1,
                        Complex c, Complex x, Complex y, bool mirrored,
                        const SeriesPolicy& policy = {});

/// The single-sum expansion in x alone.
Complex appell_f3_single_sum(Complex a, Complex a1, Complex b, Complex b1,
                             Complex c, Complex x, Complex y,
                             const SeriesPolicy& policy = {});

}  // namespace ifn
