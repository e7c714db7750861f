#pragma once

//! Text serialisation shared by the command-line tool and its tests. Tables
//! carry 17 significant digits and write the divergent sentinel as "-inf".

#include "helirad/discrete.hpp"
#include "helirad/extended_real.hpp"
#include "helirad/spectra.hpp"
#include "helirad/thermal.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace helirad::report {

// ---------------------------------------------------------------- parsing

inline double parse_number(std::string_view tok, std::string_view what) {
  while (!tok.empty() && tok.front() == ' ')
    tok.remove_prefix(1);
  while (!tok.empty() && tok.back() == ' ')
    tok.remove_suffix(1);
  if (!tok.empty() && tok.front() == '+')
    tok.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc() || end != tok.data() + tok.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string(what) + ": '" + std::string(tok) +
                                "' is not a finite number");
  return v;
}

struct GridSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;

  std::vector<double> values() const { return spectra::uniform_grid(lo, hi, step); }
};

//! "min:max:step", inclusive of max when it lies on the grid.
inline GridSpec parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos)
    throw std::invalid_argument("grid '" + std::string(text) + "' is not of the form min:max:step");
  GridSpec g{parse_number(text.substr(0, c1), "grid min"),
             parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid max"),
             parse_number(text.substr(c2 + 1), "grid step")};
  if (!(g.step > 0.0) || !(g.hi >= g.lo))
    throw std::invalid_argument("grid '" + std::string(text) + "' needs step > 0 and max >= min");
  return g;
}

//! Comma-separated numbers, at least one.
inline std::vector<double> parse_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number(text.substr(start, comma - start), what));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------- writing

//! A finite value; anything else is a contract violation of the producer.
inline std::string cell(double x) {
  if (!std::isfinite(x))
    throw std::domain_error("refusing to serialise non-finite value " + format_real(x));
  return format_real(x);
}

inline std::string cell(const ExtendedReal &x) {
  return x.is_neg_inf() ? std::string("-inf") : cell(x.value());
}

inline std::string spectrum_csv(const spectra::SpectrumTable &t) {
  std::string s = "kappa,gamma_norm,lamb_norm,gamma_over_gamma,class\n";
  for (const auto &p : t.rows) {
    s += cell(p.kappa) + ',' + cell(p.gamma_norm) + ',' + cell(p.lamb_norm) + ',' +
         cell(p.gamma_over_gamma) + ',';
    s += spectra::to_string(p.classification);
    s += '\n';
  }
  return s;
}

inline std::string discrete_line_csv(const discrete::DiscreteLineParams &p,
                                     const std::vector<double> &grid) {
  std::string s = "kappa,E_over_gamma,Gamma_over_gamma\n";
  for (double k : grid)
    s += cell(k) + ',' + cell(discrete::discrete_line_lamb(p, k)) + ',' +
         cell(discrete::discrete_line_decay(p, k)) + '\n';
  return s;
}

inline std::string thermal_csv(const std::vector<thermal::SeriesPoint> &series) {
  std::string s = "x,gamma_th\n";
  for (const auto &p : series)
    s += cell(p.parameter) + ',' + cell(p.result.gamma_th) + '\n';
  return s;
}

inline std::string trapped_csv(const spectra::TrappedIntervals &t) {
  std::string s = "kappa_lo,kappa_hi\n";
  for (const auto &[lo, hi] : t.intervals)
    s += cell(lo) + ',' + cell(hi) + '\n';
  return s;
}

//! One row per collective mode: complex eigenvalue, Gamma = 2 Re, E = Im
//! (rates in the units of gamma) and Gamma relative to a lone emitter.
inline std::string oracle_csv(const discrete::OracleSpectrum &s, double single_rate) {
  std::string out = "j,re,im,Gamma,E,Gamma_over_Gamma_single\n";
  for (std::size_t j = 0; j < s.size(); ++j)
    out += std::to_string(j) + ',' + cell(s.eigenvalues[j].real()) + ',' +
           cell(s.eigenvalues[j].imag()) + ',' + cell(s.gamma[j]) + ',' + cell(s.lamb[j]) +
           ',' + cell(s.gamma[j] / single_rate) + '\n';
  return out;
}

// --------------------------------------------------------------- checksum

//! 64-bit FNV-1a.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string checksum_text(std::string_view bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

} // namespace helirad::report
