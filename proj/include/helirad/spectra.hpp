#pragma once

//! Closed-form single-excitation spectra of infinite continuous emitter
//! geometries in the scalar-photon model, with the
//! complex eigenvalue written as Gamma/2 + i E.
//!
//! Dimensionless variables: kappa = k_z/k0, Omega = 2 pi/(k0 b) = lambda0/b,
//! r = k0 R.

#include "helirad/extended_real.hpp"
#include "helirad/parallel.hpp"
#include "helirad/specfun.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace helirad::spectra {

using specfun::pi;

/// Single-emitter constants. Lengths in nm, rates in ns^-1.
struct EmitterPhysics {
  double gamma = 1.0;   // single-emitter decay rate
  double lambda0 = 1.0; // transition wavelength
  double k0 = 2.0 * pi; // 2 pi / lambda0
  double n0 = 1.0;      // line density

  static EmitterPhysics make(double gamma, double lambda0, double n0) {
    if (!(gamma > 0.0) || !(lambda0 > 0.0) || !(n0 > 0.0))
      throw std::invalid_argument(
          "EmitterPhysics: gamma, lambda0 and n0 must be strictly positive");
    return {gamma, lambda0, 2.0 * pi / lambda0, n0};
  }

  //! 2 pi n0 / k0 = n0 lambda0, the factor turning normalised rates into
  //! Gamma/gamma.
  double superradiance_prefactor() const { return n0 * lambda0; }
};

/// Dimensionless helix parameters, optionally remembering R and b.
struct HelixSpec {
  struct Provenance {
    double R_nm = 0.0;
    double b_nm = 0.0;
  };

  double omega = 1.0;
  double r = 0.0;
  std::optional<Provenance> provenance;

  static HelixSpec make(double omega, double r) {
    if (!(omega > 0.0) || !(r >= 0.0))
      throw std::invalid_argument("HelixSpec: need Omega > 0 and r >= 0");
    return {omega, r, std::nullopt};
  }

  static HelixSpec from_geometry(double R_nm, double b_nm,
                                 const EmitterPhysics &physics) {
    if (!(R_nm >= 0.0) || !(b_nm > 0.0))
      throw std::invalid_argument("HelixSpec: need R >= 0 and b > 0");
    HelixSpec s = make(2.0 * pi / (physics.k0 * b_nm), physics.k0 * R_nm);
    s.provenance = Provenance{R_nm, b_nm};
    return s;
  }
};

enum class Classification { Trapped, Subradiant, Superradiant };

inline std::string_view to_string(Classification c) {
  switch (c) {
  case Classification::Trapped:
    return "trapped";
  case Classification::Subradiant:
    return "subradiant";
  case Classification::Superradiant:
    return "superradiant";
  }
  return "?";
}

//! Trapped iff exactly zero, superradiant iff above one.
inline Classification classify_ratio(double gamma_over_gamma) {
  if (gamma_over_gamma == 0.0)
    return Classification::Trapped;
  return gamma_over_gamma > 1.0 ? Classification::Superradiant
                                : Classification::Subradiant;
}

enum class Geometry { Line, Helix, Cylinder };

inline std::string_view to_string(Geometry g) {
  switch (g) {
  case Geometry::Line:
    return "line";
  case Geometry::Helix:
    return "helix";
  case Geometry::Cylinder:
    return "cylinder";
  }
  return "?";
}

//! What the gamma_norm / lamb_norm columns of a table mean.
//! The cylinder columns hold the bare Bessel brackets J_n^2 and J_n Y_n, which
//! coincide with the helix normalisation wherever the two spectra agree.
inline std::string_view gamma_normalization(Geometry g) {
  return g == Geometry::Cylinder ? "2*k0*Gamma/(pi*gamma*n0)"
                                 : "k0*Gamma/(2*pi*gamma*n0)";
}
inline std::string_view lamb_normalization(Geometry g) {
  return g == Geometry::Line ? "k0*E/(gamma*n0)" : "k0*E/(pi*gamma*n0)";
}

struct EigenPoint {
  double kappa = 0.0;
  double gamma_norm = 0.0;
  ExtendedReal lamb_norm;
  double gamma_over_gamma = 0.0;
  Classification classification = Classification::Trapped;
};

struct SpectrumTable {
  Geometry geometry = Geometry::Helix;
  int truncation = 0; // Lamb-shift half width M; 0 where not applicable
  std::vector<EigenPoint> rows;
};

/// Orders m whose Bessel argument sqrt(1 - (kappa - m Omega)^2) r is real.
struct MBounds {
  long long m_min = 0;
  long long m_max = -1;
  bool empty() const { return m_min > m_max; }
  bool contains(long long m) const { return m >= m_min && m <= m_max; }
};

inline constexpr double kRadicandClamp = 1e-14;

//! ceil((kappa-1)/Omega) .. floor((kappa+1)/Omega), widened by one order on
//! either side when rounding in the division put an order with
//! |kappa - m Omega| = 1 (within the radicand clamp) outside the range.
inline MBounds m_bounds(double kappa, double omega) {
  if (!(omega > 0.0))
    throw std::invalid_argument("m_bounds: Omega must be > 0");
  const double lo = std::ceil((kappa - 1.0) / omega);
  const double hi = std::floor((kappa + 1.0) / omega);
  if (std::abs(lo) > 1e15 || std::abs(hi) > 1e15)
    throw std::invalid_argument("m_bounds: kappa/Omega out of range");
  MBounds b{static_cast<long long>(lo), static_cast<long long>(hi)};
  auto admitted = [&](long long m) {
    return 1.0 - std::pow(kappa - double(m) * omega, 2) >= -kRadicandClamp;
  };
  if (admitted(b.m_min - 1))
    --b.m_min;
  if (admitted(b.m_max + 1))
    ++b.m_max;
  return b;
}

//! Bessel argument of order m; real inside `bounds`, imaginary outside.
inline specfun::BesselArg helix_argument(long long m, double kappa,
                                         const HelixSpec &spec,
                                         const MBounds &bounds) {
  const double u = kappa - double(m) * spec.omega;
  double rad = 1.0 - u * u;
  if (std::abs(rad) < kRadicandClamp)
    rad = 0.0;
  if (bounds.contains(m))
    return specfun::BesselArg::real(std::sqrt(std::max(rad, 0.0)) * spec.r);
  return specfun::BesselArg::imaginary(std::sqrt(std::max(-rad, 0.0)) * spec.r);
}

// ---------------------------------------------------------------- line

//! k0 Gamma / (2 pi gamma n0) of the infinite line: 1 for |kappa| <= 1.
inline double line_decay_norm(double kappa) {
  return std::abs(kappa) <= 1.0 ? 1.0 : 0.0;
}

//! k0 E / (gamma n0) = -2 gamma_E - ln|1 - kappa^2|; -inf at kappa = +-1.
inline ExtendedReal line_lamb_norm(double kappa) {
  const double d = std::abs(1.0 - kappa * kappa);
  if (d == 0.0)
    return ExtendedReal::neg_inf();
  return ExtendedReal(-2.0 * specfun::euler_gamma() - std::log(d));
}

// ---------------------------------------------------------------- helix

//! sum_{m=m_min}^{m_max} J_m^2(sqrt(1-(kappa-m Omega)^2) r) = k0 Gamma/(2 pi gamma n0).
inline double helix_decay_norm(double kappa, const HelixSpec &spec) {
  const MBounds b = m_bounds(kappa, spec.omega);
  double sum = 0.0;
  for (long long m = b.m_min; m <= b.m_max; ++m) {
    const auto arg = helix_argument(m, kappa, spec, b);
    const double j = specfun::bessel_j(static_cast<int>(m), arg.magnitude);
    sum += j * j;
  }
  return sum;
}

inline constexpr int kDefaultTruncation = 10;

//! Orders included in the truncated Lamb-shift sum: |m| <= M, widened so that
//! every real-argument order is always present.
inline std::pair<long long, long long> lamb_window(double kappa,
                                                   const HelixSpec &spec,
                                                   int half_width) {
  if (half_width < 0)
    throw std::invalid_argument("helix Lamb shift: truncation M must be >= 0");
  long long lo = -half_width, hi = half_width;
  const MBounds b = m_bounds(kappa, spec.omega);
  if (!b.empty()) {
    lo = std::min(lo, b.m_min);
    hi = std::max(hi, b.m_max);
  }
  return {lo, hi};
}

//! Truncated sum of Im J_m H^(1)_m = k0 E / (pi gamma n0).
inline ExtendedReal helix_lamb_norm(double kappa, const HelixSpec &spec,
                                    int half_width = kDefaultTruncation) {
  const MBounds b = m_bounds(kappa, spec.omega);
  const auto [lo, hi] = lamb_window(kappa, spec, half_width);
  ExtendedReal sum(0.0);
  for (long long m = lo; m <= hi; ++m) {
    const auto arg = helix_argument(m, kappa, spec, b);
    sum += specfun::jh_product(static_cast<int>(m), arg).im;
    if (sum.is_neg_inf())
      break;
  }
  return sum;
}

//! The real-argument part of the Lamb-shift sum, which bounds it from above.
inline ExtendedReal helix_lamb_upper_bound(double kappa, const HelixSpec &spec) {
  const MBounds b = m_bounds(kappa, spec.omega);
  ExtendedReal sum(0.0);
  for (long long m = b.m_min; m <= b.m_max; ++m) {
    const auto arg = helix_argument(m, kappa, spec, b);
    sum += specfun::jh_product(static_cast<int>(m), arg).im;
    if (sum.is_neg_inf())
      break;
  }
  return sum;
}

// ---------------------------------------------------------------- cylinder

//! J_n H^(1)_n(sqrt(1 - kappa^2) r), continued to imaginary argument for
//! |kappa| > 1.
inline specfun::HankelProduct cylinder_bracket(int n, double kappa, double r) {
  if (!(r >= 0.0))
    throw std::invalid_argument("cylinder: radius must be >= 0");
  double rad = 1.0 - kappa * kappa;
  if (std::abs(rad) < kRadicandClamp)
    rad = 0.0;
  if (std::abs(kappa) <= 1.0 || rad == 0.0)
    return specfun::jh_product(n, specfun::BesselArg::real(std::sqrt(std::max(rad, 0.0)) * r));
  return specfun::jh_product(n, specfun::BesselArg::imaginary(std::sqrt(-rad) * r));
}

struct CylinderEigen {
  double gamma = 0.0; // Gamma, same units as physics.gamma
  ExtendedReal lamb;  // E, same units as physics.gamma
};

//! Gamma = (pi gamma n0 / 2 k0) J_n^2,  E = (pi gamma n0 / k0) J_n Y_n.
inline CylinderEigen cylinder_eigen(int n, double kappa, double r,
                                    const EmitterPhysics &physics) {
  const auto h = cylinder_bracket(n, kappa, r);
  const double base = pi * physics.gamma * physics.n0 / physics.k0;
  return {0.5 * base * h.re, scale(base, h.im)};
}

// ---------------------------------------------------------------- trapped

struct TrappedIntervals {
  std::vector<std::pair<double, double>> intervals;
  double fraction = 0.0;
};

//! Measure-one trapped sets [j Omega + 1, (j+1) Omega - 1] within
//! [0, kappa_max]; present only for Omega >= 2.
inline TrappedIntervals trapped_intervals(double omega, double kappa_max) {
  if (!(omega > 0.0))
    throw std::invalid_argument("trapped_intervals: Omega must be > 0");
  if (!(kappa_max > 0.0))
    throw std::invalid_argument("trapped_intervals: kappa_max must be > 0");
  TrappedIntervals t;
  if (omega < 2.0)
    return t;
  t.fraction = (omega - 2.0) / omega;
  for (long long j = 0;; ++j) {
    const double lo = double(j) * omega + 1.0;
    if (lo > kappa_max)
      break;
    const double hi = std::min(double(j + 1) * omega - 1.0, kappa_max);
    t.intervals.emplace_back(lo, hi);
  }
  return t;
}

// ---------------------------------------------------------------- tables

inline EigenPoint classify(double kappa, const HelixSpec &spec,
                           const EmitterPhysics &physics,
                           int half_width = kDefaultTruncation) {
  EigenPoint p;
  p.kappa = kappa;
  p.gamma_norm = helix_decay_norm(kappa, spec);
  p.lamb_norm = helix_lamb_norm(kappa, spec, half_width);
  p.gamma_over_gamma = physics.superradiance_prefactor() * p.gamma_norm;
  p.classification = classify_ratio(p.gamma_over_gamma);
  return p;
}

inline EigenPoint line_point(double kappa, const EmitterPhysics &physics) {
  EigenPoint p;
  p.kappa = kappa;
  p.gamma_norm = line_decay_norm(kappa);
  p.lamb_norm = line_lamb_norm(kappa);
  p.gamma_over_gamma = physics.superradiance_prefactor() * p.gamma_norm;
  p.classification = classify_ratio(p.gamma_over_gamma);
  return p;
}

inline EigenPoint cylinder_point(int n, double kappa, double r,
                                 const EmitterPhysics &physics) {
  const auto h = cylinder_bracket(n, kappa, r);
  EigenPoint p;
  p.kappa = kappa;
  p.gamma_norm = h.re;
  p.lamb_norm = h.im;
  p.gamma_over_gamma = cylinder_eigen(n, kappa, r, physics).gamma / physics.gamma;
  p.classification = classify_ratio(p.gamma_over_gamma);
  return p;
}

namespace detail {
template <class F>
SpectrumTable tabulate(Geometry g, int truncation,
                       const std::vector<double> &grid, F point) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i - 1] < grid[i]))
      throw std::invalid_argument("sweep: kappa grid must be strictly ascending");
  SpectrumTable t{g, truncation, std::vector<EigenPoint>(grid.size())};
  parallel_for(grid.size(), [&](std::size_t i) { t.rows[i] = point(grid[i]); });
  return t;
}
} // namespace detail

inline SpectrumTable sweep(const std::vector<double> &kappa_grid,
                           const HelixSpec &spec, const EmitterPhysics &physics,
                           int half_width = kDefaultTruncation) {
  return detail::tabulate(Geometry::Helix, half_width, kappa_grid,
                          [&](double k) { return classify(k, spec, physics, half_width); });
}

inline SpectrumTable sweep_line(const std::vector<double> &kappa_grid,
                                const EmitterPhysics &physics) {
  return detail::tabulate(Geometry::Line, 0, kappa_grid,
                          [&](double k) { return line_point(k, physics); });
}

inline SpectrumTable sweep_cylinder(const std::vector<double> &kappa_grid,
                                    int order, double r,
                                    const EmitterPhysics &physics) {
  return detail::tabulate(Geometry::Cylinder, 0, kappa_grid, [&](double k) {
    return cylinder_point(order, k, r, physics);
  });
}

//! Uniform grid lo, lo+step, ..., <= hi; values snapped to 1e-12 so that
//! decimal grids hit points such as kappa = 1 exactly.
inline std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo))
    throw std::invalid_argument("grid: need step > 0 and max >= min");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = lo + double(i) * step;
    g[i] = std::round(v * 1e12) / 1e12;
  }
  return g;
}

} // namespace helirad::spectra
