#pragma once

#include "helirad/parallel.hpp"
#include "helirad/spectra.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace helirad::thermal {

//! Inverse temperature and kappa grid of the thermal average. Lamb-shift
//! values enter the weight in their normalized form, so beta is dimensionless.
struct ThermalConfig {
  double betaT = 1.0;
  double kappa_min = 0.0;
  double kappa_max = 5.0;
  double kappa_step = 0.01;
  int truncation = spectra::kDefaultTruncation;

  void validate() const {
    if (!(kappa_step > 0.0))
      throw std::invalid_argument("thermal: kappa_step must be positive");
    if (!(kappa_min < kappa_max))
      throw std::invalid_argument("thermal: kappa_min must be below kappa_max");
    if (!(betaT >= 0.0) || !std::isfinite(betaT))
      throw std::invalid_argument("thermal: beta must be finite and non-negative");
    if (truncation < 0)
      throw std::invalid_argument("thermal: truncation must be non-negative");
  }

  std::vector<double> grid() const {
    validate();
    return spectra::uniform_grid(kappa_min, kappa_max, kappa_step);
  }
};

struct ThermalResult {
  double gamma_th = 0.0;
  double c_weight = 1.0;
  ExtendedReal E_max;
  std::size_t n_points = 0;
};

class DegenerateEnsemble : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! Largest finite Lamb shift; the sentinel when every entry diverges.
inline ExtendedReal finite_max(const spectra::SpectrumTable &table) {
  ExtendedReal best = ExtendedReal::neg_inf();
  for (const auto &row : table.rows)
    if (row.lamb_norm.is_finite() && (best.is_neg_inf() || best < row.lamb_norm))
      best = row.lamb_norm;
  return best;
}

//! Weight 1 - exp(beta (E - E_max)). Divergent shifts get weight exactly 1.
inline double boltzmann_weight(const ExtendedReal &E, double beta, double E_max) {
  if (E.is_neg_inf())
    return 1.0;
  return -std::expm1(beta * (E.value() - E_max));
}

//! Riemann-sum thermal average of gamma_norm, weighted by lamb_norm.
inline ThermalResult thermal_average(const spectra::SpectrumTable &table,
                                     const ThermalConfig &config) {
  config.validate();
  const auto grid = config.grid();
  if (table.rows.size() != grid.size())
    throw std::invalid_argument("thermal: table has " + std::to_string(table.rows.size()) +
                                " rows, grid has " + std::to_string(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (std::abs(table.rows[i].kappa - grid[i]) > 1e-9)
      throw std::invalid_argument("thermal: table does not match the kappa grid at row " +
                                  std::to_string(i));

  ThermalResult res;
  res.n_points = grid.size();
  res.E_max = finite_max(table);
  const double e_max = res.E_max.is_finite() ? res.E_max.value() : 0.0;
  res.c_weight = std::exp(-config.betaT * e_max);

  double num = 0.0, den = 0.0;
  for (const auto &row : table.rows) {
    const double f = boltzmann_weight(row.lamb_norm, config.betaT, e_max);
    num += row.gamma_norm * f;
    den += f;
  }
  if (!(den > 0.0))
    throw DegenerateEnsemble("thermal: every Boltzmann weight vanishes (beta = " +
                             format_real(config.betaT) + ")");
  res.gamma_th = num / den;
  return res;
}

enum class Series { HelixFixOmega, HelixFixR, Cylinder };

inline std::string_view to_string(Series s) {
  switch (s) {
  case Series::HelixFixOmega:
    return "helix-fix-omega";
  case Series::HelixFixR:
    return "helix-fix-r";
  case Series::Cylinder:
    return "cylinder";
  }
  return "?";
}

inline Series parse_series(std::string_view s) {
  if (s == "helix-fix-omega")
    return Series::HelixFixOmega;
  if (s == "helix-fix-r")
    return Series::HelixFixR;
  if (s == "cylinder")
    return Series::Cylinder;
  throw std::invalid_argument("unknown thermal series '" + std::string(s) + "'");
}

struct SeriesPoint {
  double parameter;
  ThermalResult result;
};

//! One thermal average per parameter value. The parameter is r for the
//! fixed-omega helix and the cylinder, and omega for the fixed-r helix.
//! The cylinder uses its axially symmetric n = 0 branch.
inline std::vector<SeriesPoint> thermal_sweep(Series series,
                                              const std::vector<double> &parameters,
                                              double fixed,
                                              const spectra::EmitterPhysics &physics,
                                              const ThermalConfig &config) {
  const auto grid = config.grid();
  std::vector<SeriesPoint> out;
  out.reserve(parameters.size());
  for (double p : parameters) {
    spectra::SpectrumTable t;
    switch (series) {
    case Series::HelixFixOmega:
      t = spectra::sweep(grid, spectra::HelixSpec::make(fixed, p), physics, config.truncation);
      break;
    case Series::HelixFixR:
      t = spectra::sweep(grid, spectra::HelixSpec::make(p, fixed), physics, config.truncation);
      break;
    case Series::Cylinder:
      if (!(p >= 0.0))
        throw std::invalid_argument("thermal: cylinder radius must be non-negative");
      t = spectra::sweep_cylinder(grid, 0, p, physics);
      break;
    }
    out.push_back({p, thermal_average(t, config)});
  }
  return out;
}

} // namespace helirad::thermal
