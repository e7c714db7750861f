#pragma once

#include "helirad/discrete.hpp"
#include "helirad/extended_real.hpp"
#include "helirad/spectra.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace helirad::geomfit {

using discrete::EmitterCloud;

// ------------------------------------------------------------ loading

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &source, std::size_t line, const std::string &what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), m_line(line) {}
  std::size_t line() const { return m_line; }

private:
  std::size_t m_line;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\f\v");
  if (b == std::string_view::npos)
    return {};
  return s.substr(b, s.find_last_not_of(" \t\r\f\v") - b + 1);
}

inline std::optional<double> parse_double(std::string_view tok) {
  double v = 0.0;
  if (!tok.empty() && tok.front() == '+')
    tok.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

} // namespace detail

//! One emitter per line as "x y z" in nm; '#' starts a comment.
inline EmitterCloud parse_emitters(std::istream &in, const std::string &source = "<input>") {
  EmitterCloud cloud;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    body = detail::trim(body);
    if (body.empty())
      continue;
    double xyz[3];
    int count = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
      const auto start = body.find_first_not_of(" \t", pos);
      if (start == std::string_view::npos)
        break;
      auto end = body.find_first_of(" \t", start);
      if (end == std::string_view::npos)
        end = body.size();
      const auto tok = body.substr(start, end - start);
      if (count == 3)
        throw ParseError(source, lineno, "expected 3 coordinates, found more");
      const auto v = detail::parse_double(tok);
      if (!v)
        throw ParseError(source, lineno, "not a finite number: '" + std::string(tok) + "'");
      xyz[count++] = *v;
      pos = end;
    }
    if (count != 3)
      throw ParseError(source, lineno,
                       "expected 3 coordinates, found " + std::to_string(count));
    cloud.positions.emplace_back(xyz[0], xyz[1], xyz[2]);
  }
  if (cloud.positions.empty())
    throw std::invalid_argument(source + ": no emitters found");
  return cloud;
}

inline EmitterCloud load_emitters(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open emitter file '" + path + "'");
  return parse_emitters(in, path);
}

inline void write_emitters(std::ostream &out, const EmitterCloud &cloud) {
  for (const auto &p : cloud.positions)
    out << format_real(p.x()) << ' ' << format_real(p.y()) << ' ' << format_real(p.z()) << '\n';
}

// ------------------------------------------------------------ fitting

enum class Handedness { Left, Right };

inline std::string_view to_string(Handedness h) {
  return h == Handedness::Right ? "right" : "left";
}

class FitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct HelixFit {
  Eigen::Vector3d axis_direction = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d axis_point = Eigen::Vector3d::Zero();
  double R = 0.0;
  double b = 0.0; // pitch, positive; chirality is in `handedness`
  double phase = 0.0;
  Handedness handedness = Handedness::Right;
  double rms_residual = 0.0;
  double n0 = 0.0;         // emitters per nm of helix arc
  double n0_axial = 0.0;   // emitters per nm along the axis
  std::vector<std::string> warnings;
};

namespace detail {

struct Frame {
  Eigen::Vector3d u, v, a;
};

//! Right-handed frame (u, v, a) with u taken from `hint` where possible.
inline Frame make_frame(const Eigen::Vector3d &axis, const Eigen::Vector3d &hint) {
  Frame f;
  f.a = axis.normalized();
  Eigen::Vector3d u = hint - hint.dot(f.a) * f.a;
  if (u.norm() < 1e-8) {
    const Eigen::Vector3d alt =
        std::abs(f.a.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    u = alt - alt.dot(f.a) * f.a;
  }
  f.u = u.normalized();
  f.v = f.a.cross(f.u);
  return f;
}

//! Helix c + t a + R (cos(phi0 + w t) u + sin(phi0 + w t) v).
struct HelixModel {
  Eigen::Vector3d c;
  Frame frame;
  double R, w, phi0;

  Eigen::Vector3d at(double t) const {
    const double ph = phi0 + w * t;
    return c + t * frame.a + R * (std::cos(ph) * frame.u + std::sin(ph) * frame.v);
  }

  //! Local minimum of the distance to p, searched from axial parameter t.
  double foot_from(const Eigen::Vector3d &p, double t) const {
    const Eigen::Vector3d q = p - c;
    const double ta = q.dot(frame.a);
    const double rho = std::hypot(q.dot(frame.u), q.dot(frame.v));
    if (rho == 0.0)
      return ta;
    const double psi = std::atan2(q.dot(frame.v), q.dot(frame.u));
    const double k = R * rho;
    auto g = [&](double s) { return (s - ta) * (s - ta) - 2.0 * k * std::cos(phi0 + w * s - psi); };
    for (int it = 0; it < 50; ++it) {
      const double arg = phi0 + w * t - psi;
      const double d1 = 2.0 * (t - ta) + 2.0 * k * w * std::sin(arg);
      const double d2 = 2.0 + 2.0 * k * w * w * std::cos(arg);
      double step = -d1 / (d2 > 0.0 ? d2 : 2.0 + 2.0 * k * w * w);
      const double g0 = g(t);
      while (std::abs(step) > 1e-300 && g(t + step) > g0)
        step *= 0.5;
      t += step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(t)))
        break;
    }
    return t;
  }

  //! Axial parameter of the closest helix point to p, over all turns.
  double foot(const Eigen::Vector3d &p) const {
    const Eigen::Vector3d q = p - c;
    const double ta = q.dot(frame.a);
    if (std::abs(w) < 1e-300)
      return ta;
    const double psi = std::atan2(q.dot(frame.v), q.dot(frame.u));
    const double two_pi = 2.0 * specfun::pi;
    const double off = psi - phi0 - w * ta;
    const double t0 = ta + (off - two_pi * std::round(off / two_pi)) / w;
    // The nearest turn in azimuth need not be the nearest in space when the
    // point sits far from the surface, so check the neighbours too.
    double best_t = foot_from(p, t0), best_d = (p - at(best_t)).squaredNorm();
    for (double shift : {-1.0, 1.0}) {
      const double t = foot_from(p, t0 + shift * two_pi / std::abs(w));
      const double d = (p - at(t)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best_t = t;
      }
    }
    return best_t;
  }

  Eigen::Vector3d residual(const Eigen::Vector3d &p) const { return p - at(foot(p)); }
};

//! Applies a seven-parameter step: axis tilt toward u and v, axis offset
//! along u and v, radius, angular wavenumber and phase.
inline HelixModel perturbed(const HelixModel &m, const Eigen::Matrix<double, 7, 1> &d) {
  HelixModel out = m;
  out.frame = make_frame(m.frame.a + d[0] * m.frame.u + d[1] * m.frame.v, m.frame.u);
  out.c = m.c + d[2] * m.frame.u + d[3] * m.frame.v;
  out.R = m.R + d[4];
  out.w = m.w + d[5];
  out.phi0 = m.phi0 + d[6];
  return out;
}

//! Derivative of the helix point at axial parameter t with respect to the
//! seven step parameters of `perturbed`, evaluated at zero step.
inline Eigen::Matrix<double, 3, 7> model_jacobian(const HelixModel &m, double t) {
  const auto &[u, v, a] = m.frame;
  const double ph = m.phi0 + m.w * t;
  const double c = std::cos(ph), s = std::sin(ph);
  const Eigen::Vector3d radial = c * u + s * v;
  const Eigen::Vector3d tangential = -s * u + c * v;
  Eigen::Matrix<double, 3, 7> J;
  J.col(0) = t * u - m.R * c * a;
  J.col(1) = t * v - m.R * s * a;
  J.col(2) = u;
  J.col(3) = v;
  J.col(4) = radial;
  J.col(5) = t * m.R * tangential;
  J.col(6) = m.R * tangential;
  return J;
}

//! Levenberg-style damped Gauss-Newton. `linearize` fills J^T J and J^T r
//! and returns the squared residual; it may update auxiliary state in the model.
template <int P, class Model, class Linearize, class Perturb>
Model damped_gauss_newton(Model m, Linearize linearize, Perturb perturb,
                          std::vector<std::string> &warnings, const char *what) {
  using MatP = Eigen::Matrix<double, P, P>;
  using VecP = Eigen::Matrix<double, P, 1>;
  MatP JtJ;
  VecP Jtr;
  double f = linearize(m, &JtJ, &Jtr);
  double lambda = 1e-3;
  for (int iter = 0; iter < 500; ++iter) {
    if (f == 0.0)
      return m;
    bool accepted = false;
    for (int tries = 0; tries < 40 && !accepted; ++tries) {
      MatP A = JtJ;
      A.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-12 * JtJ.diagonal().maxCoeff());
      const VecP step = A.ldlt().solve(Jtr);
      Model trial = perturb(m, step);
      MatP JtJ_t;
      VecP Jtr_t;
      const double ft = linearize(trial, &JtJ_t, &Jtr_t);
      if (ft <= f) {
        const bool done = f - ft <= 1e-16 * f;
        m = std::move(trial);
        f = ft;
        JtJ = JtJ_t;
        Jtr = Jtr_t;
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (done)
          return m;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted)
      return m;
  }
  warnings.push_back(std::string(what) + " stopped at the iteration limit");
  return m;
}

struct Cylinder {
  Eigen::Vector3d c;
  Frame frame;
  double R;
};

//! Least-squares cylinder (axis line and radius) about a trial axis.
inline Cylinder fit_cylinder(Cylinder cyl, const std::vector<Eigen::Vector3d> &pts,
                             std::vector<std::string> &warnings) {
  using Mat5 = Eigen::Matrix<double, 5, 5>;
  using Vec5 = Eigen::Matrix<double, 5, 1>;
  auto linearize = [&](const Cylinder &m, Mat5 *JtJ, Vec5 *Jtr) {
    JtJ->setZero();
    Jtr->setZero();
    double f = 0.0;
    const auto &[u, v, a] = m.frame;
    for (const auto &p : pts) {
      const Eigen::Vector3d q = p - m.c;
      const double qa = q.dot(a);
      const Eigen::Vector3d perp = q - qa * a;
      const double rho = perp.norm();
      if (!(m.R > 0.0) || rho == 0.0)
        return HUGE_VAL;
      const Eigen::Vector3d n = perp / rho;
      const double e = rho - m.R;
      Vec5 J; // d(model radius) with e = rho - R, step solves J d = e
      J << qa * n.dot(u), qa * n.dot(v), n.dot(u), n.dot(v), 1.0;
      *JtJ += J * J.transpose();
      *Jtr += J * e;
      f += e * e;
    }
    return f;
  };
  auto perturb = [](const Cylinder &m, const Vec5 &d) {
    Cylinder out = m;
    out.frame = make_frame(m.frame.a + d[0] * m.frame.u + d[1] * m.frame.v, m.frame.u);
    out.c = m.c + d[2] * m.frame.u + d[3] * m.frame.v;
    out.R = m.R + d[4];
    return out;
  };
  return damped_gauss_newton<5>(cyl, linearize, perturb, warnings, "cylinder fit");
}

//! Helix refinement on point-to-helix distances. Foot parameters are carried
//! from one iteration to the next so every emitter stays on its turn.
inline HelixModel refine(HelixModel start, std::vector<double> feet,
                         const std::vector<Eigen::Vector3d> &pts,
                         std::vector<std::string> &warnings) {
  using Mat7 = Eigen::Matrix<double, 7, 7>;
  using Vec7 = Eigen::Matrix<double, 7, 1>;
  struct State {
    HelixModel m;
    std::vector<double> t;
  };
  auto linearize = [&](State &s, Mat7 *JtJ, Vec7 *Jtr) {
    JtJ->setZero();
    Jtr->setZero();
    double f = 0.0;
    if (!(s.m.R > 0.0))
      return HUGE_VAL;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = s.m.foot_from(pts[i], s.t[i]);
      s.t[i] = t;
      const Eigen::Vector3d r = pts[i] - s.m.at(t);
      const double ph = s.m.phi0 + s.m.w * t;
      const Eigen::Vector3d tangent =
          (s.m.frame.a +
           s.m.R * s.m.w * (-std::sin(ph) * s.m.frame.u + std::cos(ph) * s.m.frame.v))
              .normalized();
      Eigen::Matrix<double, 3, 7> J = model_jacobian(s.m, t);
      J -= tangent * (tangent.transpose() * J);
      JtJ->noalias() += J.transpose() * J;
      Jtr->noalias() += J.transpose() * r;
      f += r.squaredNorm();
    }
    return f;
  };
  auto perturb = [&](const State &s, const Vec7 &d) {
    State out{perturbed(s.m, d), s.t};
    // Keep each foot at the same position relative to the moved axis.
    for (std::size_t i = 0; i < pts.size(); ++i)
      out.t[i] = s.t[i] - (out.m.c - s.m.c).dot(out.m.frame.a);
    return out;
  };
  State st{start, std::move(feet)};
  return damped_gauss_newton<7>(std::move(st), linearize, perturb, warnings, "helix refinement")
      .m;
}

inline double rms(const HelixModel &m, const std::vector<Eigen::Vector3d> &pts) {
  double s = 0.0;
  for (const auto &p : pts)
    s += m.residual(p).squaredNorm();
  return std::sqrt(s / double(pts.size()));
}

struct Candidate {
  HelixModel model;
  double rms = HUGE_VAL;
  std::vector<std::string> warnings;
};

//! Helix fit about one trial axis, seeded by a cylinder fit.
inline std::optional<Candidate> fit_about_axis(const std::vector<Eigen::Vector3d> &pts,
                                               const Eigen::Vector3d &centroid,
                                               const Eigen::Vector3d &axis) {
  const Frame fr0 = make_frame(axis, axis.unitOrthogonal());
  const auto n = static_cast<Eigen::Index>(pts.size());
  Candidate cand;

  // Algebraic circle fit of the projection, x^2 + y^2 + D x + E y + F = 0,
  // seeds the cylinder.
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector3d q = pts[i] - centroid;
    const double x = q.dot(fr0.u), y = q.dot(fr0.v);
    A(i, 0) = x;
    A(i, 1) = y;
    A(i, 2) = 1.0;
    rhs[i] = -(x * x + y * y);
  }
  const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(rhs);
  const double xc = -0.5 * sol[0], yc = -0.5 * sol[1];
  const double r2 = xc * xc + yc * yc - sol[2];
  if (!(r2 > 0.0) || !std::isfinite(r2))
    return std::nullopt;
  Cylinder cyl{centroid + xc * fr0.u + yc * fr0.v, fr0, std::sqrt(r2)};
  cyl = fit_cylinder(cyl, pts, cand.warnings);
  if (!(cyl.R > 0.0) || !cyl.c.allFinite())
    return std::nullopt;
  const Frame fr = cyl.frame;
  const Eigen::Vector3d c0 = cyl.c;

  // Unwrap the azimuth in axial order and regress it against the axial
  // coordinate.
  std::vector<double> t(pts.size()), ang(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Eigen::Vector3d q = pts[i] - c0;
    t[i] = q.dot(fr.a);
    ang[i] = std::atan2(q.dot(fr.v), q.dot(fr.u));
  }
  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto i, auto j) { return t[i] < t[j]; });
  const double pi = specfun::pi;
  std::vector<double> phi(pts.size());
  double largest_jump = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k == 0) {
      phi[i] = ang[i];
      continue;
    }
    const double prev = phi[order[k - 1]];
    const double jump = std::remainder(ang[i] - prev, 2.0 * pi);
    largest_jump = std::max(largest_jump, std::abs(jump));
    phi[i] = prev + jump;
  }
  if (largest_jump > 0.9 * pi)
    cand.warnings.push_back("azimuth advances by up to " + format_real(largest_jump) +
                            " rad between axially adjacent emitters; pitch may be aliased");

  double st = 0, sp = 0, stt = 0, stp = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    st += t[i];
    sp += phi[i];
    stt += t[i] * t[i];
    stp += t[i] * phi[i];
  }
  const double nn = double(pts.size());
  const double var = stt - st * st / nn;
  if (!(var > 0.0))
    return std::nullopt;
  const double w0 = (stp - st * sp / nn) / var;
  if (!(std::abs(w0) > 0.0) || !std::isfinite(w0))
    return std::nullopt;
  const double phi00 = (sp - w0 * st) / nn;

  HelixModel start{c0, fr, cyl.R, w0, phi00};
  // Each emitter starts at the axial parameter matching its unwrapped azimuth.
  std::vector<double> feet(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    feet[i] = (phi[i] - phi00) / w0;
  cand.model = refine(start, std::move(feet), pts, cand.warnings);
  cand.rms = rms(cand.model, pts);
  if (!(cand.model.R > 0.0) || !std::isfinite(cand.rms))
    return std::nullopt;
  return cand;
}

} // namespace detail

//! Axial extent of the cloud along the fitted axis.
inline double axial_extent(const EmitterCloud &cloud, const HelixFit &fit) {
  double lo = HUGE_VAL, hi = -HUGE_VAL;
  for (const auto &p : cloud.positions) {
    const double t = (p - fit.axis_point).dot(fit.axis_direction);
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  return hi - lo;
}

//! Emitters per nm of helix arc over the span the cloud covers.
inline double line_density(const EmitterCloud &cloud, const HelixFit &fit) {
  const double span = axial_extent(cloud, fit);
  if (!(span > 0.0))
    throw FitError("line density: cloud has zero axial extent");
  const double stretch = std::hypot(1.0, 2.0 * specfun::pi * fit.R / fit.b);
  return double(cloud.size()) / (span * stretch);
}

inline double axial_density(const EmitterCloud &cloud, const HelixFit &fit) {
  const double span = axial_extent(cloud, fit);
  if (!(span > 0.0))
    throw FitError("axial density: cloud has zero axial extent");
  return double(cloud.size()) / span;
}

//! Best single helix through the cloud. Each principal direction is tried
//! as the starting axis and the lowest residual wins.
inline HelixFit fit_helix(const EmitterCloud &cloud) {
  cloud.validate();
  const auto &pts = cloud.positions;
  if (pts.size() < 8)
    throw FitError("helix fit needs at least 8 emitters, got " + std::to_string(pts.size()));

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto &p : pts)
    centroid += p;
  centroid /= double(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto &p : pts)
    cov += (p - centroid) * (p - centroid).transpose();
  cov /= double(pts.size());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> pca(cov);
  const Eigen::Vector3d ev = pca.eigenvalues(); // ascending
  if (ev[1] <= 1e-12 * ev[2])
    throw FitError("helix fit: emitters are collinear");
  if (ev[0] <= 1e-12 * ev[2])
    throw FitError("helix fit: emitters are coplanar");

  std::optional<detail::Candidate> best;
  for (int k = 2; k >= 0; --k) {
    auto c = detail::fit_about_axis(pts, centroid, pca.eigenvectors().col(k));
    if (c && (!best || c->rms < best->rms))
      best = std::move(c);
  }
  if (!best)
    throw FitError("helix fit: no trial axis produced a valid circle and pitch");

  auto m = best->model;
  // Orient the axis along the input order, re-anchor the phase at the foot of
  // the centroid, and express chirality through the sign of w.
  Eigen::Vector3d a = m.frame.a;
  if (a.dot(pts.back() - pts.front()) < 0.0) {
    // (u, v, a) -> (u, -v, -a) keeps the frame right-handed and w unchanged.
    m.frame = detail::Frame{m.frame.u, -m.frame.v, -a};
    m.phi0 = -m.phi0;
  }
  const double shift = (centroid - m.c).dot(m.frame.a);
  m.c += shift * m.frame.a;
  m.phi0 = std::remainder(m.phi0 + m.w * shift, 2.0 * specfun::pi);

  HelixFit fit;
  fit.axis_direction = m.frame.a;
  fit.axis_point = m.c;
  fit.R = m.R;
  fit.b = 2.0 * specfun::pi / std::abs(m.w);
  fit.phase = m.phi0;
  fit.handedness = m.w > 0.0 ? Handedness::Right : Handedness::Left;
  fit.rms_residual = best->rms;
  fit.warnings = std::move(best->warnings);
  fit.n0 = line_density(cloud, fit);
  fit.n0_axial = axial_density(cloud, fit);
  return fit;
}

// ------------------------------------------------------------ estimates

struct EstimateReport {
  double R_nm = 0.0;
  double b_nm = 0.0;
  double n0_per_nm = 0.0;
  double Omega = 0.0;
  double r = 0.0;
  double gamma_max_over_gamma = 0.0;
  double trapped_percent = 0.0;
};

inline double trapped_percent(double omega) {
  return omega >= 2.0 ? 100.0 * (omega - 2.0) / omega : 0.0;
}

inline EstimateReport estimate(double R_nm, double b_nm, double n0_per_nm,
                               const spectra::EmitterPhysics &physics) {
  if (!(R_nm > 0.0) || !(b_nm > 0.0) || !(n0_per_nm > 0.0))
    throw std::invalid_argument("estimate: R, b and n0 must be positive");
  const auto spec = spectra::HelixSpec::from_geometry(R_nm, b_nm, physics);
  EstimateReport e;
  e.R_nm = R_nm;
  e.b_nm = b_nm;
  e.n0_per_nm = n0_per_nm;
  e.Omega = spec.omega;
  e.r = spec.r;
  // The decay maximum sits at kappa = 1, where the m = 0 order is exactly 1.
  e.gamma_max_over_gamma = n0_per_nm * physics.lambda0 * spectra::helix_decay_norm(1.0, spec);
  e.trapped_percent = trapped_percent(spec.omega);
  return e;
}

inline EstimateReport estimate(const HelixFit &fit, const spectra::EmitterPhysics &physics) {
  return estimate(fit.R, fit.b, fit.n0, physics);
}

inline std::string to_key_value(const EstimateReport &e) {
  std::string s;
  auto put = [&](const char *k, double v) { s += std::string(k) + "=" + format_real(v) + "\n"; };
  put("R_nm", e.R_nm);
  put("b_nm", e.b_nm);
  put("n0_per_nm", e.n0_per_nm);
  put("Omega", e.Omega);
  put("r", e.r);
  put("gamma_max_over_gamma", e.gamma_max_over_gamma);
  put("trapped_percent", e.trapped_percent);
  return s;
}

} // namespace helirad::geomfit
