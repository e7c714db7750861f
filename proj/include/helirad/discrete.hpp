#pragma once

#include "helirad/extended_real.hpp"
#include "helirad/parallel.hpp"
#include "helirad/specfun.hpp"
#include "helirad/spectra.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace helirad::discrete {

// ------------------------------------------------ infinite discrete line

enum class Orientation { Parallel, Perpendicular };

inline std::string_view to_string(Orientation o) {
  return o == Orientation::Parallel ? "par" : "perp";
}

inline Orientation parse_orientation(std::string_view s) {
  if (s == "par" || s == "parallel")
    return Orientation::Parallel;
  if (s == "perp" || s == "perpendicular")
    return Orientation::Perpendicular;
  throw std::invalid_argument("unknown orientation '" + std::string(s) + "'");
}

struct DiscreteLineParams {
  double k0d = 0.0;
  Orientation orientation = Orientation::Parallel;

  static DiscreteLineParams make(double k0d, Orientation o) {
    if (!(k0d > 0.0) || !std::isfinite(k0d))
      throw std::invalid_argument("discrete line: k0*d must be positive");
    return {k0d, o};
  }

  static DiscreteLineParams from_spacing(double d_over_lambda, Orientation o) {
    return make(2.0 * specfun::pi * d_over_lambda, o);
  }
};

//! Collective Lamb shift of the infinite dipole chain, in units of gamma.
//! The perpendicular case carries a log(1 - e^{i phi}) term that diverges
//! at kappa = +-1 (and wherever the phase is a multiple of 2 pi).
inline ExtendedReal discrete_line_lamb(const DiscreteLineParams &p, double kappa) {
  const double a = p.k0d;
  const double phase_plus = (1.0 + kappa) * a;
  const double phase_minus = (1.0 - kappa) * a;
  const auto li3p = specfun::polylog_unit_circle(3, phase_plus);
  const auto li3m = specfun::polylog_unit_circle(3, phase_minus);
  const auto li2p = specfun::polylog_unit_circle(2, phase_plus);
  const auto li2m = specfun::polylog_unit_circle(2, phase_minus);
  // Re[Li3 - i a Li2] = Re Li3 + a Im Li2
  const double common = li3p.real() + li3m.real() + a * (li2p.imag() + li2m.imag());
  const double a3 = a * a * a;

  if (p.orientation == Orientation::Parallel)
    return ExtendedReal(-1.5 / a3 * common);

  const auto lp = specfun::log_one_minus_unit(phase_plus);
  const auto lm = specfun::log_one_minus_unit(phase_minus);
  ExtendedReal logs = lp.re + lm.re;
  if (logs.is_neg_inf())
    return ExtendedReal::neg_inf();
  return ExtendedReal(0.75 / a3 * (common + a * a * logs.value()));
}

//! Reciprocal-lattice orders g with |kappa + 2 pi g / (k0 d)| <= 1.
inline std::pair<long long, long long> lattice_orders(double k0d, double kappa) {
  const double scale = k0d / (2.0 * specfun::pi);
  return {static_cast<long long>(std::ceil((-1.0 - kappa) * scale - 1e-12)),
          static_cast<long long>(std::floor((1.0 - kappa) * scale + 1e-12))};
}

//! Collective decay rate of the infinite dipole chain, in units of gamma.
inline double discrete_line_decay(const DiscreteLineParams &p, double kappa) {
  const auto [lo, hi] = lattice_orders(p.k0d, kappa);
  const double sign = p.orientation == Orientation::Parallel ? -1.0 : 1.0;
  double sum = 0.0;
  for (long long g = lo; g <= hi; ++g) {
    const double q = kappa + 2.0 * specfun::pi * double(g) / p.k0d;
    if (std::abs(q) > 1.0 + 1e-12)
      continue;
    sum += 1.0 + sign * q * q;
  }
  return 1.5 * specfun::pi / p.k0d * sum;
}

// ------------------------------------------------------- emitter clouds

struct EmitterCloud {
  std::vector<Eigen::Vector3d> positions; // nm

  std::size_t size() const { return positions.size(); }

  //! Smallest pairwise distance; O(N^2).
  double min_separation() const {
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < positions.size(); ++i)
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        best = std::min(best, (positions[i] - positions[j]).norm());
    return best;
  }

  void validate() const {
    if (positions.empty())
      throw std::invalid_argument("emitter cloud is empty");
    for (std::size_t i = 0; i < positions.size(); ++i) {
      if (!positions[i].allFinite())
        throw std::invalid_argument("emitter " + std::to_string(i) +
                                    " has a non-finite coordinate");
      for (std::size_t j = i + 1; j < positions.size(); ++j)
        if ((positions[i] - positions[j]).norm() == 0.0)
          throw std::invalid_argument("emitters " + std::to_string(i) + " and " +
                                      std::to_string(j) + " coincide");
    }
  }
};

inline EmitterCloud line_cloud(std::size_t n, double spacing) {
  if (n == 0 || !(spacing > 0.0))
    throw std::invalid_argument("line cloud: need n >= 1 and spacing > 0");
  EmitterCloud c;
  for (std::size_t j = 0; j < n; ++j)
    c.positions.emplace_back(0.0, 0.0, spacing * double(j));
  return c;
}

inline EmitterCloud ring_cloud(std::size_t n, double radius) {
  if (n == 0 || !(radius > 0.0))
    throw std::invalid_argument("ring cloud: need n >= 1 and radius > 0");
  EmitterCloud c;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = 2.0 * specfun::pi * double(j) / double(n);
    c.positions.emplace_back(radius * std::cos(t), radius * std::sin(t), 0.0);
  }
  return c;
}

inline EmitterCloud pair_cloud(double separation) {
  if (!(separation > 0.0))
    throw std::invalid_argument("pair cloud: separation must be positive");
  EmitterCloud c;
  c.positions.emplace_back(0.0, 0.0, 0.0);
  c.positions.emplace_back(0.0, 0.0, separation);
  return c;
}

//! n emitters spaced by arc length `spacing` along a helix of radius R and
//! pitch b about the z axis. A negative pitch gives a left-handed helix.
inline EmitterCloud helix_cloud(double R, double b, double spacing, std::size_t n,
                                double phase = 0.0) {
  if (!(R > 0.0) || b == 0.0 || !std::isfinite(b) || !(spacing > 0.0) || n == 0)
    throw std::invalid_argument("helix cloud: need R > 0, b != 0, spacing > 0, n >= 1");
  const double turn = std::hypot(2.0 * specfun::pi * R, b);
  const double dtheta = 2.0 * specfun::pi * spacing / turn;
  EmitterCloud c;
  for (std::size_t j = 0; j < n; ++j) {
    const double t = dtheta * double(j);
    c.positions.emplace_back(R * std::cos(t + phase), R * std::sin(t + phase),
                             b * t / (2.0 * specfun::pi));
  }
  return c;
}

// ----------------------------------------------------- brute-force oracle

using ComplexMatrix = Eigen::MatrixXcd;

//! Scalar-photon coupling matrix: gamma on the diagonal and
//! -i gamma e^{i k0 r}/(k0 r) between distinct emitters.
inline ComplexMatrix build_scalar_kernel(const EmitterCloud &cloud,
                                         const spectra::EmitterPhysics &physics) {
  cloud.validate();
  const auto n = static_cast<Eigen::Index>(cloud.size());
  ComplexMatrix m(n, n);
  const std::complex<double> minus_i(0.0, -1.0);
  parallel_for(cloud.size(), [&](std::size_t row) {
    const auto j = static_cast<Eigen::Index>(row);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (k == j) {
        m(j, k) = physics.gamma;
        continue;
      }
      const double x = physics.k0 * (cloud.positions[row] - cloud.positions[k]).norm();
      m(j, k) = minus_i * physics.gamma * std::polar(1.0, x) / x;
    }
  });
  return m;
}

class EigensolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

//! Parlett-Reinsch balancing with power-of-two scale factors, in place.
//! A diagonal similarity, so the spectrum is unchanged.
inline void balance(ComplexMatrix &a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0, radix2 = radix * radix;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i)
          continue;
        c += std::abs(a(j, i).real()) + std::abs(a(j, i).imag());
        r += std::abs(a(i, j).real()) + std::abs(a(i, j).imag());
      }
      if (c == 0.0 || r == 0.0)
        continue;
      double g = r / radix, f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

} // namespace detail

struct OracleSpectrum {
  std::vector<std::complex<double>> eigenvalues; // descending real part
  std::vector<double> gamma;                     // 2 Re
  std::vector<double> lamb;                      // Im

  std::size_t size() const { return eigenvalues.size(); }
};

//! All eigenvalues of a dense non-Hermitian matrix, balanced first.
inline OracleSpectrum oracle_spectrum(const ComplexMatrix &matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("oracle spectrum: matrix must be square");
  if (!matrix.allFinite())
    throw std::invalid_argument("oracle spectrum: matrix has non-finite entries");
  OracleSpectrum out;
  if (matrix.rows() == 0)
    return out;

  ComplexMatrix a = matrix;
  detail::balance(a);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver;
  const Eigen::Index max_iter = 30 * a.rows();
  solver.setMaxIterations(max_iter);
  solver.compute(a, false);
  if (solver.info() != Eigen::Success)
    throw EigensolverError("oracle spectrum: complex Schur iteration did not converge (N = " +
                           std::to_string(a.rows()) + ", iteration budget " +
                           std::to_string(max_iter) + " per eigenvalue)");

  const auto &ev = solver.eigenvalues();
  out.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::stable_sort(out.eigenvalues.begin(), out.eigenvalues.end(),
                   [](auto x, auto y) { return x.real() > y.real(); });
  for (auto e : out.eigenvalues) {
    out.gamma.push_back(2.0 * e.real());
    out.lamb.push_back(e.imag());
  }
  return out;
}

//! Rate of one isolated emitter in the scalar-kernel convention (2 Re of
//! the diagonal entry).
inline double single_emitter_rate(const spectra::EmitterPhysics &physics) {
  return 2.0 * physics.gamma;
}

//! Fraction of collective modes decaying slower than a lone emitter.
inline double subradiant_fraction(const OracleSpectrum &s,
                                  const spectra::EmitterPhysics &physics) {
  if (s.size() == 0)
    return 0.0;
  const double single = single_emitter_rate(physics);
  std::size_t count = 0;
  for (double g : s.gamma)
    if (g / single < 1.0)
      ++count;
  return double(count) / double(s.size());
}

} // namespace helirad::discrete
