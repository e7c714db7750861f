// helirad: figure-ready spectra of continuous and discrete emitter helices.

#include "helirad/discrete.hpp"
#include "helirad/geomfit.hpp"
#include "helirad/report.hpp"
#include "helirad/spectra.hpp"
#include "helirad/thermal.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace helirad;
using nlohmann::ordered_json;

namespace {

#ifndef HELIRAD_VERSION
#define HELIRAD_VERSION "dev"
#endif

// Bad flag values surface as usage errors (exit 2).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PhysicsFlags {
  double gamma = 1.0;
  double lambda0 = 280.0;
  std::optional<double> n0;

  void add(CLI::App *app) {
    app->add_option("--gamma", gamma, "Single-emitter decay rate (ns^-1)")->capture_default_str();
    app->add_option("--lambda0", lambda0, "Transition wavelength (nm)")->capture_default_str();
    app->add_option("--n0", n0, "Line density (nm^-1); default 1/lambda0");
  }

  spectra::EmitterPhysics resolve() const {
    return spectra::EmitterPhysics::make(gamma, lambda0, n0.value_or(1.0 / lambda0));
  }

  void record(ordered_json &p, const spectra::EmitterPhysics &ph) const {
    p["gamma"] = ph.gamma;
    p["lambda0_nm"] = ph.lambda0;
    p["n0_per_nm"] = ph.n0;
  }
};

struct OutputFlags {
  std::string path;

  void add(CLI::App *app) { app->add_option("-o,--output", path, "Output file (stdout if omitted)"); }

  //! Writes the data file and its manifest, or the data to stdout.
  void emit(const std::string &subcommand, const ordered_json &params,
            const std::string &data) const {
    if (path.empty()) {
      std::cout << data;
      return;
    }
    write_file(path, data);
    ordered_json m;
    m["subcommand"] = subcommand;
    m["parameters"] = params;
    m["version"] = HELIRAD_VERSION;
    m["output"] = path;
    m["checksum"] = report::checksum_text(data);
    write_file(path + ".manifest.json", m.dump(2) + "\n");
  }

  static void write_file(const std::string &p, const std::string &data) {
    std::ofstream out(p, std::ios::binary);
    out << data;
    out.close();
    if (!out)
      throw std::runtime_error("cannot write '" + p + "'");
  }
};

std::vector<double> grid_from(const std::string &text, ordered_json &params) {
  const auto g = report::parse_grid(text);
  params["kappa"] = {{"min", g.lo}, {"max", g.hi}, {"step", g.step}};
  return g.values();
}

// ---------------------------------------------------------------- spectrum

struct SpectrumCmd {
  std::string geometry;
  std::optional<double> omega, radius, R_nm, b_nm;
  std::string kappa = "0:5:0.01";
  int M = spectra::kDefaultTruncation;
  int order = 0;
  PhysicsFlags physics;
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("spectrum", "Eigenvalue table of an infinite line, helix or cylinder");
    c->add_option("geometry", geometry, "line | helix | cylinder")
        ->required()
        ->check(CLI::IsMember({"line", "helix", "cylinder"}));
    c->add_option("--omega", omega, "Inverse pitch lambda0/b");
    c->add_option("--radius,--r", radius, "Dimensionless radius k0 R");
    c->add_option("--R", R_nm, "Radius (nm)");
    c->add_option("--b", b_nm, "Pitch (nm)");
    c->add_option("--kappa", kappa, "Grid min:max:step")->capture_default_str();
    c->add_option("--M", M, "Lamb-shift truncation half width")->capture_default_str();
    c->add_option("--order", order, "Cylinder angular order n")->capture_default_str();
    physics.add(c);
    out.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    const auto ph = physics.resolve();
    ordered_json p;
    p["geometry"] = geometry;
    physics.record(p, ph);
    const auto grid = grid_from(kappa, p);
    if (omega && b_nm)
      throw UsageError("give either --omega or --b, not both");
    if (radius && R_nm)
      throw UsageError("give either --radius or --R, not both");
    const std::optional<double> r = radius ? radius : R_nm ? std::optional(ph.k0 * *R_nm) : std::nullopt;
    const std::optional<double> om =
        omega ? omega : b_nm ? std::optional(ph.lambda0 / *b_nm) : std::nullopt;

    spectra::SpectrumTable t;
    if (geometry == "line") {
      if (r || om)
        throw UsageError("the line takes no geometry flags");
      t = spectra::sweep_line(grid, ph);
    } else if (geometry == "helix") {
      if (!r || !om)
        throw UsageError("helix needs --omega (or --b) and --radius (or --R)");
      if (M < 0)
        throw UsageError("--M must be non-negative");
      t = spectra::sweep(grid, spectra::HelixSpec::make(*om, *r), ph, M);
      p["omega"] = *om;
      p["r"] = *r;
      p["M"] = M;
    } else {
      if (!r || om)
        throw UsageError("cylinder needs --radius (or --R) and no pitch");
      t = spectra::sweep_cylinder(grid, order, *r, ph);
      p["r"] = *r;
      p["order"] = order;
    }
    out.emit("spectrum", p, report::spectrum_csv(t));
  }
};

// ----------------------------------------------------------------- trapped

struct TrappedCmd {
  double omega = 0.0;
  double kappa_max = 10.0;
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("trapped", "Measure-one trapped kappa intervals of a helix");
    c->add_option("--omega", omega, "Inverse pitch lambda0/b")->required();
    c->add_option("--kappa-max", kappa_max, "Upper end of the kappa range")->capture_default_str();
    out.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    const auto t = spectra::trapped_intervals(omega, kappa_max);
    std::string listing;
    for (const auto &[lo, hi] : t.intervals)
      listing += (listing.empty() ? "" : ",") + ("[" + format_real(lo) + "," + format_real(hi) + "]");
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.4f", t.fraction);
    std::cout << "intervals: " << (listing.empty() ? "none" : listing) << "\n"
              << "fraction: " << frac << "\n";
    if (out.path.empty())
      return;
    ordered_json p{{"omega", omega}, {"kappa_max", kappa_max}, {"fraction", t.fraction}};
    out.emit("trapped", p, report::trapped_csv(t));
  }
};

// ----------------------------------------------------------------- thermal

struct ThermalCmd {
  std::string series;
  std::string omega, r;
  std::string kappa = "0:5:0.01";
  double beta = 1.0;
  int M = spectra::kDefaultTruncation;
  PhysicsFlags physics;
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("thermal", "Thermally averaged decay rate along a parameter series");
    c->add_option("--series", series, "helix-fix-omega | helix-fix-r | cylinder")
        ->required()
        ->check(CLI::IsMember({"helix-fix-omega", "helix-fix-r", "cylinder"}));
    c->add_option("--omega", omega, "Fixed Omega, or a comma list for helix-fix-r");
    c->add_option("--r", r, "Comma list of r, or the fixed r for helix-fix-r");
    c->add_option("--kappa", kappa, "Grid min:max:step")->capture_default_str();
    c->add_option("--beta", beta, "Dimensionless inverse temperature")->capture_default_str();
    c->add_option("--M", M, "Lamb-shift truncation half width")->capture_default_str();
    physics.add(c);
    out.add(c);
    c->callback([this] { run(); });
  }

  static double single(const std::string &text, const char *flag) {
    const auto v = report::parse_list(text, flag);
    if (v.size() != 1)
      throw UsageError(std::string(flag) + " must be a single value for this series");
    return v[0];
  }

  void run() {
    const auto s = thermal::parse_series(series);
    const auto ph = physics.resolve();
    ordered_json p;
    p["series"] = series;
    physics.record(p, ph);

    thermal::ThermalConfig cfg;
    const auto g = report::parse_grid(kappa);
    cfg.kappa_min = g.lo;
    cfg.kappa_max = g.hi;
    cfg.kappa_step = g.step;
    cfg.betaT = beta;
    cfg.truncation = M;
    cfg.validate();
    p["kappa"] = {{"min", g.lo}, {"max", g.hi}, {"step", g.step}};
    p["beta"] = beta;

    std::vector<double> xs;
    double fixed = 0.0;
    switch (s) {
    case thermal::Series::HelixFixOmega:
      if (omega.empty() || r.empty())
        throw UsageError("helix-fix-omega needs --omega <value> and --r <list>");
      fixed = single(omega, "--omega");
      xs = report::parse_list(r, "--r");
      p["omega"] = fixed;
      p["r"] = xs;
      p["M"] = M;
      break;
    case thermal::Series::HelixFixR:
      if (omega.empty() || r.empty())
        throw UsageError("helix-fix-r needs --r <value> and --omega <list>");
      fixed = single(r, "--r");
      xs = report::parse_list(omega, "--omega");
      p["r"] = fixed;
      p["omega"] = xs;
      p["M"] = M;
      break;
    case thermal::Series::Cylinder:
      if (r.empty() || !omega.empty())
        throw UsageError("cylinder needs --r <list> and no --omega");
      xs = report::parse_list(r, "--r");
      p["r"] = xs;
      p["order"] = 0;
      break;
    }
    out.emit("thermal", p, report::thermal_csv(thermal::thermal_sweep(s, xs, fixed, ph, cfg)));
  }
};

// ----------------------------------------------------------- discrete-line

struct DiscreteLineCmd {
  std::optional<double> d_over_lambda, k0d;
  std::string orientation = "par";
  std::string kappa = "-2:2:0.01";
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("discrete-line", "Infinite dipole chain with spacing d");
    auto *a = c->add_option("--d-over-lambda", d_over_lambda, "Spacing d/lambda0");
    auto *b = c->add_option("--k0d", k0d, "Spacing k0 d");
    a->excludes(b);
    c->add_option("--orientation", orientation, "par | perp")
        ->check(CLI::IsMember({"par", "perp", "parallel", "perpendicular"}))
        ->capture_default_str();
    c->add_option("--kappa", kappa, "Grid min:max:step")->capture_default_str();
    out.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    if (!d_over_lambda && !k0d)
      throw UsageError("discrete-line needs --d-over-lambda or --k0d");
    const auto o = discrete::parse_orientation(orientation);
    const auto params = d_over_lambda ? discrete::DiscreteLineParams::from_spacing(*d_over_lambda, o)
                                      : discrete::DiscreteLineParams::make(*k0d, o);
    ordered_json p{{"k0d", params.k0d}, {"orientation", discrete::to_string(o)}};
    if (d_over_lambda)
      p["d_over_lambda"] = *d_over_lambda;
    const auto grid = grid_from(kappa, p);
    out.emit("discrete-line", p, report::discrete_line_csv(params, grid));
  }
};

// ------------------------------------------------------------------ oracle

struct OracleCmd {
  std::string generate, cloud;
  double R = 11.2, b = 7.8, d = 1.0, s = 10.0;
  std::size_t n = 100;
  PhysicsFlags physics;
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("oracle", "Dense eigenvalues of a finite emitter cloud");
    auto *g = c->add_option("--generate", generate, "helix | pair | line | ring | single")
                  ->check(CLI::IsMember({"helix", "pair", "line", "ring", "single"}));
    auto *f = c->add_option("--cloud", cloud, "Whitespace-separated x y z file (nm)");
    g->excludes(f);
    c->add_option("--R", R, "Helix or ring radius (nm)")->capture_default_str();
    c->add_option("--b", b, "Helix pitch (nm); negative for left-handed")->capture_default_str();
    c->add_option("--n", n, "Number of emitters")->capture_default_str();
    c->add_option("--d", d, "Arc spacing for helix and line (nm)")->capture_default_str();
    c->add_option("--s", s, "Pair separation (nm)")->capture_default_str();
    physics.add(c);
    out.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    if (generate.empty() == cloud.empty())
      throw UsageError("oracle needs exactly one of --generate or --cloud");
    const auto ph = physics.resolve();
    ordered_json p;
    physics.record(p, ph);
    discrete::EmitterCloud pts;
    if (!cloud.empty()) {
      pts = geomfit::load_emitters(cloud);
      p["cloud"] = cloud;
    } else {
      p["generate"] = generate;
      if (generate == "helix") {
        pts = discrete::helix_cloud(R, b, d, n);
        p.update({{"R_nm", R}, {"b_nm", b}, {"d_nm", d}, {"n", n}});
      } else if (generate == "pair") {
        pts = discrete::pair_cloud(s);
        p["s_nm"] = s;
      } else if (generate == "line") {
        pts = discrete::line_cloud(n, d);
        p.update({{"d_nm", d}, {"n", n}});
      } else if (generate == "ring") {
        pts = discrete::ring_cloud(n, R);
        p.update({{"R_nm", R}, {"n", n}});
      } else {
        pts.positions.emplace_back(0.0, 0.0, 0.0);
      }
    }
    const auto spec = discrete::oracle_spectrum(discrete::build_scalar_kernel(pts, ph));
    const double single = discrete::single_emitter_rate(ph);
    const double gmax = spec.gamma.empty() ? 0.0 : spec.gamma.front();

    std::string summary;
    auto put = [&](const char *k, double v) { summary += std::string(k) + "=" + format_real(v) + "\n"; };
    summary += "N=" + std::to_string(pts.size()) + "\n";
    put("Gamma_single", single);
    put("max_Gamma_over_Gamma_single", gmax / single);
    put("max_Gamma_over_gamma", gmax / ph.gamma);
    put("subradiant_fraction", discrete::subradiant_fraction(spec, ph));
    if (generate == "helix") {
      // Continuum maximum for the same axial density, the large-N target of
      // max Gamma_j / gamma.
      const double n0_axial = 1.0 / (d * std::abs(b) / std::hypot(2.0 * spectra::pi * R, b));
      const auto hs = spectra::HelixSpec::from_geometry(R, std::abs(b), ph);
      put("continuum_max_Gamma_over_gamma", n0_axial * ph.lambda0 * spectra::helix_decay_norm(1.0, hs));
    }
    std::cout << summary;
    if (!out.path.empty())
      out.emit("oracle", p, report::oracle_csv(spec, single));
  }
};

// ------------------------------------------------------------ fit-estimate

struct FitEstimateCmd {
  std::string cloud;
  std::optional<double> R, b, n0;
  double lambda0 = 280.0;
  OutputFlags out;

  void add(CLI::App &app) {
    auto *c = app.add_subcommand("fit-estimate", "Helix fit of a cloud and continuum estimates");
    auto *f = c->add_option("--cloud", cloud, "Whitespace-separated x y z file (nm)");
    auto *r = c->add_option("--R", R, "Radius (nm), instead of a cloud");
    auto *p = c->add_option("--b", b, "Pitch (nm), instead of a cloud");
    c->add_option("--n0", n0, "Line density (nm^-1); overrides the fitted value");
    c->add_option("--lambda0", lambda0, "Transition wavelength (nm)")->capture_default_str();
    f->excludes(r)->excludes(p);
    out.add(c);
    c->callback([this] { run(); });
  }

  void run() {
    const auto ph = spectra::EmitterPhysics::make(1.0, lambda0, 1.0 / lambda0);
    ordered_json p{{"lambda0_nm", lambda0}};
    std::string text;
    geomfit::EstimateReport e;
    if (!cloud.empty()) {
      auto fit = geomfit::fit_helix(geomfit::load_emitters(cloud));
      for (const auto &w : fit.warnings)
        std::cerr << "warning: " << w << "\n";
      auto put = [&](const std::string &k, double v) { text += k + "=" + format_real(v) + "\n"; };
      put("fit_R_nm", fit.R);
      put("fit_b_nm", fit.b);
      text += "fit_handedness=" + std::string(geomfit::to_string(fit.handedness)) + "\n";
      put("fit_rms_residual_nm", fit.rms_residual);
      put("fit_n0_arc_per_nm", fit.n0);
      put("fit_n0_axial_per_nm", fit.n0_axial);
      for (int i = 0; i < 3; ++i)
        put("fit_axis_direction_" + std::string(1, "xyz"[i]), fit.axis_direction[i]);
      for (int i = 0; i < 3; ++i)
        put("fit_axis_point_" + std::string(1, "xyz"[i]), fit.axis_point[i]);
      p["cloud"] = cloud;
      if (n0) {
        fit.n0 = *n0;
        p["n0_override_per_nm"] = *n0;
      }
      e = geomfit::estimate(fit, ph);
    } else {
      if (!R || !b || !n0)
        throw UsageError("fit-estimate needs --cloud, or all of --R, --b and --n0");
      p.update({{"R_nm", *R}, {"b_nm", *b}, {"n0_per_nm", *n0}});
      e = geomfit::estimate(*R, *b, *n0, ph);
    }
    text += geomfit::to_key_value(e);
    std::cout << text;
    if (!out.path.empty())
      out.emit("fit-estimate", p, text);
  }
};

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Collective decay rates and Lamb shifts of emitter helices"};
  app.set_version_flag("--version", HELIRAD_VERSION);
  app.require_subcommand(1);

  SpectrumCmd spectrum;
  TrappedCmd trapped;
  ThermalCmd thermal_cmd;
  DiscreteLineCmd discrete_line;
  OracleCmd oracle;
  FitEstimateCmd fit_estimate;
  spectrum.add(app);
  trapped.add(app);
  thermal_cmd.add(app);
  discrete_line.add(app);
  oracle.add(app);
  fit_estimate.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
