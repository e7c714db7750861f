#pragma once

// Independent reference values for the special-function kernel.
//
// Everything here is computed from textbook power series in 150-digit binary
// floating point (Boost.Multiprecision), which is immune to the cancellation
// that makes those series useless in double precision for large arguments.
// The polylogarithm reference uses the Bose-Einstein integral representation
// and adaptive double-exponential quadrature. None of this shares code or
// algorithms with include/helirad/specfun.hpp.

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>

namespace oracle {

using hp = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<150>,
    boost::multiprecision::et_off>;

inline hp hp_pi() { return boost::math::constants::pi<hp>(); }
inline hp hp_euler() { return boost::math::constants::euler<hp>(); }

inline hp factorial(int n) {
  hp f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

inline hp harmonic(int n) {
  hp h = 0;
  for (int i = 1; i <= n; ++i)
    h += hp(1) / i;
  return h;
}

// Sum until the term is below 1e-140 of the largest term seen.
template <class TermFn> hp sum_series(TermFn term, int k0 = 0) {
  hp s = 0, biggest = 0;
  const hp tiny("1e-140");
  for (int k = k0; k < 100000; ++k) {
    hp t = term(k);
    s += t;
    hp a = abs(t);
    if (a > biggest)
      biggest = a;
    if (k > k0 + 5 && a <= tiny * biggest)
      break;
  }
  return s;
}

// J_n(x), n >= 0:  (x/2)^n sum (-x^2/4)^k / (k! (n+k)!)
inline hp bessel_j(int n, hp x) {
  const hp q = -x * x / 4;
  hp term = pow(x / 2, n) / factorial(n);
  hp s = 0, biggest = 0;
  for (int k = 0; k < 100000; ++k) {
    s += term;
    if (abs(term) > biggest)
      biggest = abs(term);
    if (k > 5 && abs(term) <= hp("1e-140") * biggest)
      break;
    term *= q / (hp(k + 1) * hp(n + k + 1));
  }
  return s;
}

// I_n(x), n >= 0
inline hp bessel_i(int n, hp x) {
  const hp q = x * x / 4;
  hp term = pow(x / 2, n) / factorial(n);
  hp s = 0;
  for (int k = 0; k < 100000; ++k) {
    s += term;
    if (k > 5 && term <= hp("1e-140") * s)
      break;
    term *= q / (hp(k + 1) * hp(n + k + 1));
  }
  return s;
}

// psi(k+1) + psi(n+k+1) with psi(j+1) = -gamma + H_j, evaluated incrementally
// inside the Y and K series below.

// Y_n(x), n >= 0 (Abramowitz & Stegun 9.1.11)
inline hp bessel_y(int n, hp x) {
  const hp pi = hp_pi(), g = hp_euler();
  const hp half = x / 2, q = x * x / 4;
  hp finite = 0;
  for (int k = 0; k < n; ++k)
    finite += factorial(n - k - 1) / factorial(k) * pow(q, k);
  finite *= -pow(half, -n) / pi;
  const hp logpart = 2 / pi * log(half) * bessel_j(n, x);

  hp hk = 0, hnk = harmonic(n);
  hp term = pow(half, n) / factorial(n); // (x/2)^n (-q)^k/(k!(n+k)!)
  hp s = 0, biggest = 0;
  for (int k = 0; k < 100000; ++k) {
    const hp t = term * ((-g + hk) + (-g + hnk));
    s += t;
    if (abs(t) > biggest)
      biggest = abs(t);
    if (k > 5 && abs(t) <= hp("1e-140") * biggest)
      break;
    term *= -q / (hp(k + 1) * hp(n + k + 1));
    hk += hp(1) / (k + 1);
    hnk += hp(1) / (n + k + 1);
  }
  return finite + logpart - s / pi;
}

// K_n(x), n >= 0 (Abramowitz & Stegun 9.6.11)
inline hp bessel_k(int n, hp x) {
  const hp g = hp_euler();
  const hp half = x / 2, q = x * x / 4;
  hp finite = 0;
  for (int k = 0; k < n; ++k) {
    hp t = factorial(n - k - 1) / factorial(k) * pow(q, k);
    finite += (k % 2 ? -t : t);
  }
  finite *= pow(half, -n) / 2;
  const hp logpart = (n % 2 ? 1 : -1) * log(half) * bessel_i(n, x);

  hp hk = 0, hnk = harmonic(n);
  hp term = pow(half, n) / factorial(n);
  hp s = 0, biggest = 0;
  for (int k = 0; k < 100000; ++k) {
    const hp t = term * ((-g + hk) + (-g + hnk));
    s += t;
    if (abs(t) > biggest)
      biggest = abs(t);
    if (k > 5 && abs(t) <= hp("1e-140") * biggest)
      break;
    term *= q / (hp(k + 1) * hp(n + k + 1));
    hk += hp(1) / (k + 1);
    hnk += hp(1) / (n + k + 1);
  }
  return finite + logpart + (n % 2 ? -1 : 1) * s / 2;
}

inline double j(int n, double x) {
  const double sign = (n < 0 && (n % 2)) ? -1.0 : 1.0;
  return sign * static_cast<double>(bessel_j(std::abs(n), hp(x)));
}
inline double y(int n, double x) {
  const double sign = (n < 0 && (n % 2)) ? -1.0 : 1.0;
  return sign * static_cast<double>(bessel_y(std::abs(n), hp(x)));
}
inline double i(int n, double x) {
  return static_cast<double>(bessel_i(std::abs(n), hp(x)));
}
inline double k(int n, double x) {
  return static_cast<double>(bessel_k(std::abs(n), hp(x)));
}

// Li_s(e^{i theta}) from Li_s(z) = 1/Gamma(s) int_0^inf t^{s-1} / (e^t/z - 1) dt.
// Not usable at theta = 0 mod 2pi for s = 1; fine for s = 2, 3 away from it.
inline std::complex<double> polylog_unit(int s, double theta) {
  using ld = long double;
  const std::complex<ld> zinv = std::polar<ld>(1.0L, -static_cast<ld>(theta));
  boost::math::quadrature::exp_sinh<ld> integrator;
  auto integrand = [&](ld t, bool imag) -> ld {
    if (t == 0)
      return 0;
    const std::complex<ld> v =
        std::pow(t, static_cast<ld>(s - 1)) / (std::exp(t) * zinv - 1.0L);
    return imag ? v.imag() : v.real();
  };
  const ld tol = 1e-16L;
  const ld re = integrator.integrate([&](ld t) { return integrand(t, false); },
                                     tol);
  const ld im = integrator.integrate([&](ld t) { return integrand(t, true); },
                                     tol);
  const ld gamma_s = (s == 2) ? 1.0L : 2.0L;
  return {static_cast<double>(re / gamma_s), static_cast<double>(im / gamma_s)};
}

// First positive root of f by bisection on [lo, hi] in high precision.
template <class F> double bisect_root(F f, double lo, double hi) {
  hp a = lo, b = hi, fa = f(a);
  for (int it = 0; it < 200; ++it) {
    hp mid = (a + b) / 2, fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return static_cast<double>((a + b) / 2);
}

} // namespace oracle
