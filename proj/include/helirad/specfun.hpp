#pragma once

//! Special functions needed by the collective-emission spectra. Integer-order
//! Bessel functions of real argument feed the products J_m H^(1)_m on the real
//! and imaginary axes; Li_2 and Li_3 are evaluated on the complex unit circle.
//!
//! Accuracy target: 1e-12 relative for |m| <= 50, x <= 100 (absolute
//! ~1e-16 near zeros of J and Y). All functions are pure.

#include "helirad/extended_real.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helirad::specfun {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double zeta2 = pi * pi / 6.0;
inline constexpr double zeta3 = 1.2020569031595942854;

inline constexpr double euler_gamma() { return 0.57721566490153286061; }

namespace detail {

inline int parity_sign(int m) { return (m < 0 && (m % 2 != 0)) ? -1 : 1; }

// (x/2)^n / n!, accumulated as a product so that it underflows gracefully
// for huge n instead of going through lgamma.
inline double leading_power(int n, double x) {
  double t = 1.0;
  const double h = 0.5 * x;
  for (int k = 1; k <= n; ++k) {
    t *= h / k;
    if (t == 0.0)
      break;
  }
  return t;
}

// Ascending series for J_n (sign = -1) or I_n (sign = +1), n >= 0.
inline double ascending_series(int n, double x, double sign) {
  const double lead = leading_power(n, x);
  if (lead == 0.0)
    return 0.0;
  const double q = sign * 0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (double(k) * double(n + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum))
      break;
  }
  return lead * sum;
}

constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleBy = 1e-150;

// J_0 .. J_N at x > 0 via Miller's downward recurrence normalised by
// J_0 + 2 sum_k J_2k = 1. The returned array extends past `need` far enough
// that its tail is negligible, which the Neumann series for Y relies on.
inline std::vector<double> bessel_j_table(int need, double x) {
  if (x < 1e-100) {
    std::vector<double> out(static_cast<std::size_t>(need) + 3);
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] = leading_power(static_cast<int>(k), x);
    return out;
  }
  const double big = std::max<double>(need, std::ceil(x));
  int start = static_cast<int>(big) + 20 + static_cast<int>(std::sqrt(160.0 * big));
  start += start % 2;
  std::vector<double> out(static_cast<std::size_t>(start) + 1, 0.0);
  double jp1 = 0.0, jk = 1e-280, norm = 0.0;
  out[start] = jk;
  for (int k = start; k >= 1; --k) {
    const double jm1 = (2.0 * k / x) * jk - jp1;
    jp1 = jk;
    jk = jm1;
    out[k - 1] = jk;
    if (k - 1 > 0 && (k - 1) % 2 == 0)
      norm += 2.0 * jk;
    if (std::abs(jk) > kRescaleAbove) {
      jk *= kRescaleBy;
      jp1 *= kRescaleBy;
      norm *= kRescaleBy;
      for (int i = k - 1; i <= start; ++i)
        out[i] *= kRescaleBy;
    }
  }
  norm += out[0];
  for (auto &v : out)
    v /= norm;
  return out;
}

// Y_0 and Y_1 from the Neumann series over the Miller table.
inline std::pair<double, double> bessel_y01(double x) {
  const auto j = bessel_j_table(1, x);
  const double lg = std::log(0.5 * x) + euler_gamma();
  double s0 = 0.0, s1 = 0.0;
  const int kmax = static_cast<int>(j.size() - 2) / 2;
  for (int k = kmax; k >= 1; --k) {
    const double sg = (k % 2) ? -1.0 : 1.0;
    s0 += sg * j[2 * k] / k;
    s1 += sg * (j[2 * k - 1] - j[2 * k + 1]) / k;
  }
  const double y0 = (2.0 / pi) * (lg * j[0] - 2.0 * s0);
  const double y1 = (2.0 / pi) * (lg * j[1] - j[0] / x + s1);
  return {y0, y1};
}

// Y_n by upward recurrence; may overflow to -inf for tiny x and large n.
inline double bessel_y_upward(int n, double x) {
  auto [y0, y1] = bessel_y01(x);
  if (n == 0)
    return y0;
  double ym = y0, yk = y1;
  for (int k = 1; k < n; ++k) {
    const double yp = (2.0 * k / x) * yk - ym;
    ym = yk;
    yk = yp;
    if (!std::isfinite(yk))
      break;
  }
  return yk;
}

// e^{-x} I_n(x), n >= 0, x > 0.
inline double bessel_i_scaled(int n, double x) {
  if (x <= 20.0 || x * x <= 4.0 * (n + 1))
    return ascending_series(n, x, +1.0) * std::exp(-x);
  int start = n + 40 + static_cast<int>(10.0 * std::sqrt(x));
  double ip1 = 0.0, ik = 1e-280, norm = 0.0, result = 0.0;
  for (int k = start; k >= 1; --k) {
    const double im1 = (2.0 * k / x) * ik + ip1;
    ip1 = ik;
    ik = im1;
    if (k - 1 == n)
      result = ik;
    if (k - 1 > 0)
      norm += 2.0 * ik;
    if (ik > kRescaleAbove) {
      ik *= kRescaleBy;
      ip1 *= kRescaleBy;
      norm *= kRescaleBy;
      result *= kRescaleBy;
    }
  }
  norm += ik;
  return result / norm;
}

// e^{x} K_0(x), e^{x} K_1(x) for x > 0.
inline std::pair<double, double> bessel_k01_scaled(double x) {
  if (x <= 2.0) {
    const double q = 0.25 * x * x;
    const double lg = std::log(0.5 * x);
    const double g = euler_gamma();
    // K_0 = -(ln(x/2)+g) I_0 + sum q^k/(k!)^2 H_k
    // K_1 = 1/x + ln(x/2) I_1 - (x/4) sum (H_k + H_{k+1} - 2g) q^k/(k!(k+1)!)
    double t0 = 1.0, t1 = 1.0, i0 = 1.0, i1 = 1.0, s0 = 0.0;
    double hk = 0.0;
    double s1 = (1.0 - 2.0 * g);
    for (int k = 1; k < 200; ++k) {
      t0 *= q / (double(k) * k);
      t1 *= q / (double(k) * (k + 1));
      hk += 1.0 / k;
      i0 += t0;
      i1 += t1;
      s0 += t0 * hk;
      s1 += t1 * (2.0 * hk + 1.0 / (k + 1) - 2.0 * g);
      if (t0 < 1e-18 * i0 && t1 < 1e-18 * i1)
        break;
    }
    i1 *= 0.5 * x;
    const double k0 = -(lg + g) * i0 + s0;
    const double k1 = 1.0 / x + lg * i1 - 0.25 * x * s1;
    const double ex = std::exp(x);
    return {k0 * ex, k1 * ex};
  }
  // Steed's continued fraction CF2 (Temme's variant), order 0.
  const double a1 = 0.25;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 100000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17)
      break;
  }
  h = a1 * h;
  const double k0 = std::sqrt(pi / (2.0 * x)) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

inline double bessel_k_scaled(int n, double x) {
  auto [k0, k1] = bessel_k01_scaled(x);
  if (n == 0)
    return k0;
  double km = k0, kk = k1;
  for (int k = 1; k < n; ++k) {
    const double kp = km + (2.0 * k / x) * kk;
    km = kk;
    kk = kp;
    if (!std::isfinite(kk))
      break;
  }
  return kk;
}

} // namespace detail

//! J_m(x) for any integer m and x >= 0.
inline double bessel_j(int m, double x) {
  if (!(x >= 0.0))
    throw std::domain_error("bessel_j: argument must be >= 0");
  const int n = std::abs(m);
  if (x == 0.0)
    return n == 0 ? 1.0 : 0.0;
  double v;
  if (x * x <= 4.0 * (n + 1))
    v = detail::ascending_series(n, x, -1.0);
  else
    v = detail::bessel_j_table(n, x)[static_cast<std::size_t>(n)];
  return detail::parity_sign(m) * v;
}

//! Y_m(x) for x > 0. At x = 0 the function diverges and a domain_error is
//! raised; callers that want the limit use jh_product.
inline double bessel_y(int m, double x) {
  if (!(x > 0.0))
    throw std::domain_error("bessel_y: logarithmic divergence at x = 0");
  const int n = std::abs(m);
  const double v = detail::bessel_y_upward(n, x);
  if (!std::isfinite(v))
    throw std::overflow_error("bessel_y: Y_" + std::to_string(n) +
                              " overflows at x = " + format_real(x));
  return detail::parity_sign(m) * v;
}

//! (I_m(x), K_m(x)) for x > 0. Results that leave the double range are
//! reported with overflow_error.
inline std::pair<double, double> bessel_ik(int m, double x) {
  if (!(x > 0.0))
    throw std::domain_error("bessel_ik: argument must be > 0");
  const int n = std::abs(m);
  const double is = detail::bessel_i_scaled(n, x);
  const double ks = detail::bessel_k_scaled(n, x);
  const double ex = std::exp(x);
  const double iv = is * ex, kv = ks / ex;
  if (!std::isfinite(iv) || !std::isfinite(kv) || !(iv > 0.0) || !(kv > 0.0))
    throw std::overflow_error("bessel_ik: I_" + std::to_string(n) + "/K_" +
                              std::to_string(n) + " out of range at x = " +
                              format_real(x));
  return {iv, kv};
}

//! Exponentially scaled pair (e^{-x} I_m(x), e^{x} K_m(x)).
inline std::pair<double, double> bessel_ik_scaled(int m, double x) {
  if (!(x > 0.0))
    throw std::domain_error("bessel_ik_scaled: argument must be > 0");
  const int n = std::abs(m);
  return {detail::bessel_i_scaled(n, x), detail::bessel_k_scaled(n, x)};
}

/// Argument of the Bessel-Hankel product: either x or i*x with x >= 0.
struct BesselArg {
  enum class Kind { Real, Imaginary };
  Kind kind = Kind::Real;
  double magnitude = 0.0;

  static BesselArg real(double x) { return {Kind::Real, x}; }
  static BesselArg imaginary(double x) { return {Kind::Imaginary, x}; }
};

/// J_m(z) H^(1)_m(z); the imaginary part may be the -inf sentinel.
struct HankelProduct {
  double re = 0.0;
  ExtendedReal im;
};

//! J_m(z) H^(1)_m(z) for z = x (real) or z = ix.
//!
//!  - z = 0, m = 0:   1 - i inf (sentinel)
//!  - z = 0, m != 0:  -i / (|m| pi)
//!  - z = x > 0:      J_m^2 + i J_m Y_m, real part in [0, 1)
//!  - z = ix, x > 0:  -i (2/pi) I_m(x) K_m(x)
inline HankelProduct jh_product(int m, BesselArg arg) {
  if (!(arg.magnitude >= 0.0))
    throw std::domain_error("jh_product: magnitude must be >= 0");
  const int n = std::abs(m);
  const double x = arg.magnitude;
  if (x == 0.0) {
    if (n == 0)
      return {1.0, ExtendedReal::neg_inf()};
    return {0.0, ExtendedReal(-1.0 / (n * pi))};
  }
  if (arg.kind == BesselArg::Kind::Imaginary) {
    const auto [is, ks] = bessel_ik_scaled(n, x);
    double prod = is * ks;
    if (!std::isfinite(ks) && n > 0)
      prod = 1.0 / (2.0 * n); // x << 1 limit, exact to double here
    return {0.0, ExtendedReal(-(2.0 / pi) * prod)};
  }
  const double j = bessel_j(n, x);
  const double y = detail::bessel_y_upward(n, x);
  double jy = j * y;
  if (!std::isfinite(y) || !std::isfinite(jy))
    jy = -1.0 / (n * pi); // x << 1 limit, exact to double here
  return {j * j, ExtendedReal(jy)};
}

namespace detail {

// c_j = 2 zeta(2j), j = 0..39 (index 0 unused).
inline const std::array<double, 40> &two_zeta_even() {
  static const std::array<double, 40> table = [] {
    std::array<double, 40> t{};
    const double p2 = pi * pi;
    t[1] = 2.0 * p2 / 6.0;
    t[2] = 2.0 * p2 * p2 / 90.0;
    t[3] = 2.0 * p2 * p2 * p2 / 945.0;
    t[4] = 2.0 * p2 * p2 * p2 * p2 / 9450.0;
    for (int j = 5; j < 40; ++j) {
      double z = 0.0;
      for (int n = 80; n >= 1; --n)
        z += std::pow(static_cast<double>(n), -2.0 * j);
      t[j] = 2.0 * z;
    }
    return t;
  }();
  return table;
}

} // namespace detail

//! Li_s(e^{i phase}) for s in {2, 3}.
//!
//! Uses the expansion of Li_s(e^mu) in powers of mu = i theta around the
//! branch point,
//!   Li_s(e^mu) = sum_{k != s-1} zeta(s-k) mu^k/k!
//!              + mu^{s-1}/(s-1)! [H_{s-1} - ln(-mu)],
//! with theta reduced to [-pi, pi] where the series converges like 4^{-j}.
inline std::complex<double> polylog_unit_circle(int s, double phase) {
  if (s != 2 && s != 3)
    throw std::invalid_argument("polylog_unit_circle: s must be 2 or 3");
  const double th = std::remainder(phase, 2.0 * pi);
  if (th == 0.0)
    return {s == 2 ? zeta2 : zeta3, 0.0};

  const double t = (th / (2.0 * pi)) * (th / (2.0 * pi));
  const auto &c = detail::two_zeta_even();
  double tail = 0.0, tp = 1.0;
  for (int j = 1; j < 40; ++j) {
    tp *= t;
    double denom = (2.0 * j) * (2.0 * j + 1.0);
    if (s == 3)
      denom *= (2.0 * j + 2.0);
    const double term = c[j] * tp / denom;
    tail += term;
    if (term < 1e-18 * std::abs(tail))
      break;
  }
  const double lg = std::log(std::abs(th));
  const double sg = th > 0 ? 1.0 : -1.0;
  if (s == 2) {
    const double re = zeta2 - 0.5 * pi * std::abs(th) + 0.25 * th * th;
    const double im = th * (1.0 - lg) + th * tail;
    return {re, im};
  }
  const double th2 = th * th;
  const double re = zeta3 - 0.5 * th2 * (1.5 - lg) - th2 * tail;
  const double im = zeta2 * th - 0.25 * pi * sg * th2 + th2 * th / 12.0;
  return {re, im};
}

/// ln(1 - e^{i phase}); the real part is the -inf sentinel at phase = 0 mod 2pi.
struct LogOnCircle {
  ExtendedReal re;
  double im = 0.0;
};

inline LogOnCircle log_one_minus_unit(double phase) {
  double th = std::fmod(phase, 2.0 * pi);
  if (th < 0)
    th += 2.0 * pi;
  if (th == 0.0)
    return {ExtendedReal::neg_inf(), 0.0};
  return {ExtendedReal(std::log(2.0 * std::sin(0.5 * th))), 0.5 * (th - pi)};
}

} // namespace helirad::specfun
