#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "legcalc/errors.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/rng.hpp"

namespace legcalc {

// Per-step sampling contract. phi/theta are stored unwrapped and every step
// (including the implied wrap step back to sample 0) must stay under these
// bounds so the winding integer is unambiguous.
struct SamplingBounds {
  double max_dangle = kPi / 4.0;
  double max_dz = 0.5;
  double max_dr = 0.5;
  double r_min = 1e-9;  // hard positivity floor; generators use FourierSpec::r_min
};

// Closed sampled curve in cylindrical coordinates (z, r, phi), phi unwrapped.
// Sample 0 follows the last sample; z and r return to their initial values
// across the wrap, phi advances by 2*pi*k.
struct CylCurve {
  struct Sample {
    double t = 0.0;
    double z = 0.0;
    double r = 0.0;
    double phi = 0.0;
  };
  std::vector<Sample> samples;

  std::size_t size() const { return samples.size(); }

  // Parameter step of edge i -> i+1 (wraps at the end).
  double dt(std::size_t i) const {
    const std::size_t n = samples.size();
    return i + 1 < n ? samples[i + 1].t - samples[i].t
                     : 1.0 - samples[n - 1].t + samples[0].t;
  }

  // phi step of edge i, using the principal wrap delta on the last edge.
  double dphi(std::size_t i) const {
    const std::size_t n = samples.size();
    return i + 1 < n ? samples[i + 1].phi - samples[i].phi
                     : wrap_to_pi(samples[0].phi - samples[n - 1].phi);
  }

  double dz(std::size_t i) const {
    const std::size_t n = samples.size();
    return i + 1 < n ? samples[i + 1].z - samples[i].z
                     : samples[0].z - samples[n - 1].z;
  }

  void validate(const SamplingBounds& b = {}) const;
};

// The same knot in H^2 x S^1 coordinates (x, y, theta), theta unwrapped,
// y > 0. Invariants are computed on this representation.
struct HKnot {
  struct Point {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;
  };
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }

  double dtheta(std::size_t i) const {
    const std::size_t n = points.size();
    return i + 1 < n ? points[i + 1].theta - points[i].theta
                     : wrap_to_pi(points[0].theta - points[n - 1].theta);
  }

  void validate(const SamplingBounds& b = {}) const;
};

inline void CylCurve::validate(const SamplingBounds& b) const {
  const std::size_t n = samples.size();
  if (n < 8) throw error(errc::invalid, "cylcurve: need at least 8 samples");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    if (!(s.r > b.r_min))
      throw error(errc::invalid,
                  "cylcurve: r <= r_min at sample " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    if (i > 0 && !(samples[i - 1].t < s.t))
      throw error(errc::parse, "cylcurve: t not strictly increasing at sample " +
                                   std::to_string(i));
  }
  if (!(samples[0].t >= 0.0 && samples[n - 1].t < 1.0))
    throw error(errc::parse, "cylcurve: t must lie in [0,1)");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(dphi(i)) < b.max_dangle) || !(std::abs(dz(i)) <= b.max_dz) ||
        !(std::abs(samples[(i + 1) % n].r - samples[i].r) <= b.max_dr)) {
      throw error(errc::invalid,
                  "cylcurve: sampling density violated at step " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    }
  }
}

inline void HKnot::validate(const SamplingBounds& b) const {
  const std::size_t n = points.size();
  if (n < 8) throw error(errc::invalid, "hknot: need at least 8 points");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = points[i];
    if (!(p.y > 0.0))
      throw error(errc::invalid, "hknot: y <= 0 at point " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    if (i > 0 && !(points[i - 1].t < p.t))
      throw error(errc::parse,
                  "hknot: t not strictly increasing at point " + std::to_string(i));
  }
  if (!(points[0].t >= 0.0 && points[n - 1].t < 1.0))
    throw error(errc::parse, "hknot: t must lie in [0,1)");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(std::abs(dtheta(i)) < b.max_dangle))
      throw error(errc::invalid,
                  "hknot: theta step too large at step " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    const auto& p = points[i];
    const auto& q = points[(i + 1) % n];
    if (p.x == q.x && p.y == q.y)
      throw error(errc::non_generic,
                  "hknot: projected points coincide at step " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
  }
}

// Coordinate change Psi^{-1}: (z, r, phi) -> (x, y, theta) = (z, r^2, phi).
inline HKnot to_hcoords(const CylCurve& c, const SamplingBounds& b = {}) {
  c.validate(b);
  HKnot k;
  k.points.reserve(c.samples.size());
  for (const auto& s : c.samples) k.points.push_back({s.t, s.z, s.r * s.r, s.phi});
  k.validate(b);
  return k;
}

// Psi: (x, y, theta) -> (z, r, phi) = (x, sqrt(y), theta).
inline CylCurve from_hcoords(const HKnot& k, const SamplingBounds& b = {}) {
  k.validate(b);
  CylCurve c;
  c.samples.reserve(k.points.size());
  for (const auto& p : k.points) c.samples.push_back({p.t, p.x, std::sqrt(p.y), p.theta});
  c.validate(b);
  return c;
}

// Euclidean chart (u, v, z) = (r cos phi, r sin phi, z).
inline Polyline3 to_uvz(const CylCurve& c) {
  Polyline3 p;
  p.vertices.reserve(c.samples.size());
  for (const auto& s : c.samples)
    p.vertices.push_back({s.r * std::cos(s.phi), s.r * std::sin(s.phi), s.z});
  return p;
}

inline Polyline3 to_uvz(const HKnot& k) {
  Polyline3 p;
  p.vertices.reserve(k.points.size());
  for (const auto& q : k.points) {
    const double r = std::sqrt(q.y);
    p.vertices.push_back({r * std::cos(q.theta), r * std::sin(q.theta), q.x});
  }
  return p;
}

struct LegendrianCheck {
  bool ok = false;
  double max_residual = 0.0;
  std::size_t worst_step = 0;
};

// Discrete test of the contact condition dz + r^2 dphi = 0: residual
// |dz + rbar^2 dphi| / dt per step, rbar the midpoint radius.
inline LegendrianCheck is_legendrian(const CylCurve& c, double tol = 1e-8) {
  const std::size_t n = c.samples.size();
  LegendrianCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    const double rbar = 0.5 * (c.samples[i].r + c.samples[(i + 1) % n].r);
    const double res = std::abs(c.dz(i) + rbar * rbar * c.dphi(i)) / c.dt(i);
    if (res > out.max_residual) {
      out.max_residual = res;
      out.worst_step = i;
    }
  }
  out.ok = out.max_residual <= tol;
  return out;
}

// Discrete genericity: every projected segment has length >= min_step.
inline bool is_generic(const HKnot& k, double min_step = 1e-6) {
  const std::size_t n = k.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = k.points[i];
    const auto& q = k.points[(i + 1) % n];
    if (std::hypot(q.x - p.x, q.y - p.y) < min_step) return false;
  }
  return true;
}

// Randomized knot family parameters. Accepted from JSON with keys
// degree, bound, h_target, r_min, seed (and optionally samples).
struct FourierSpec {
  int degree = 3;
  double bound = 0.25;
  int h_target = 0;
  double r_min = 0.25;
  std::uint64_t seed = 0;
  int samples = 512;

  void validate() const {
    if (degree < 1) throw error(errc::invalid, "fourierspec: degree must be >= 1");
    if (!(r_min > 0.0)) throw error(errc::invalid, "fourierspec: r_min must be > 0");
    if (!(bound > 0.0)) throw error(errc::invalid, "fourierspec: bound must be > 0");
    if (samples < 64) throw error(errc::invalid, "fourierspec: need >= 64 samples");
  }
};

namespace detail {

// Truncated trigonometric series with seeded coefficients; `decay` scales
// harmonic k by 1/k^decay.
struct TrigSeries {
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;

  static TrigSeries draw(SeededRng& rng, int degree, double amplitude, double decay) {
    TrigSeries s;
    s.cos_coef.resize(static_cast<std::size_t>(degree));
    s.sin_coef.resize(static_cast<std::size_t>(degree));
    for (int k = 1; k <= degree; ++k) {
      const double scale = amplitude / std::pow(static_cast<double>(k), decay);
      s.cos_coef[static_cast<std::size_t>(k - 1)] = scale * rng.next_signed();
      s.sin_coef[static_cast<std::size_t>(k - 1)] = scale * rng.next_signed();
    }
    return s;
  }

  double eval(double t) const {
    double v = 0.0;
    for (std::size_t j = 0; j < cos_coef.size(); ++j) {
      const double w = kTwoPi * static_cast<double>(j + 1) * t;
      v += cos_coef[j] * std::cos(w) + sin_coef[j] * std::sin(w);
    }
    return v;
  }

  double amplitude_bound() const {
    double a = 0.0;
    for (std::size_t j = 0; j < cos_coef.size(); ++j)
      a += std::abs(cos_coef[j]) + std::abs(sin_coef[j]);
    return a;
  }
};

constexpr double kEmbedSeparation = 1e-3;
constexpr int kMaxGenerateAttempts = 64;

}  // namespace detail

// Self-separation of the (u,v,z) image; used as the embeddedness margin.
inline double embedding_margin(const HKnot& k) { return min_self_separation(to_uvz(k)); }
inline double embedding_margin(const CylCurve& c) { return min_self_separation(to_uvz(c)); }

// Random generic (not necessarily Legendrian) knot: truncated trigonometric
// series for (x, y, theta) with the theta winding pinned to h_target,
// y bounded away from 0, embeddedness and genericity checked; deterministic
// in spec.seed, retries with derived sub-seeds.
inline HKnot generate_generic(const FourierSpec& spec) {
  spec.validate();
  const int n = spec.samples;
  for (int attempt = 0; attempt < detail::kMaxGenerateAttempts; ++attempt) {
    SeededRng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
    const auto xs = detail::TrigSeries::draw(rng, spec.degree, 1.2 * spec.bound, 1.0);
    const auto ys = detail::TrigSeries::draw(rng, spec.degree, 1.6 * spec.bound, 2.0);
    const auto ts = detail::TrigSeries::draw(rng, spec.degree, 1.2 * spec.bound, 1.0);
    const double x0 = 0.5 * rng.next_signed();
    const double y0 = spec.r_min * spec.r_min + 0.6 + ys.amplitude_bound();

    HKnot k;
    k.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      k.points.push_back({t, x0 + xs.eval(t), y0 + ys.eval(t),
                          kTwoPi * spec.h_target * t + ts.eval(t)});
    }
    try {
      k.validate();
    } catch (const error&) {
      continue;
    }
    if (!is_generic(k, 1e-6)) continue;
    if (embedding_margin(k) < detail::kEmbedSeparation) continue;
    return k;
  }
  throw error(errc::generation,
              "generate_generic: no embedded generic curve after " +
                  std::to_string(detail::kMaxGenerateAttempts) +
                  " attempts (seed " + std::to_string(spec.seed) + ")");
}

// Random Legendrian curve. r and phi' are seeded series; phi' is corrected
// by delta*g(t) with g mean-zero so that sum(rbar^2 dphi) = 0 (closure of z)
// while the phi winding stays 2*pi*h_target; z steps are then defined as
// dz = -rbar^2 dphi, which makes the discrete contact residual rounding-level.
inline CylCurve generate_legendrian(const FourierSpec& spec) {
  spec.validate();
  const int n = spec.samples;
  for (int attempt = 0; attempt < detail::kMaxGenerateAttempts; ++attempt) {
    SeededRng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(attempt)));
    const auto rs = detail::TrigSeries::draw(rng, spec.degree, 1.6 * spec.bound, 2.0);
    const auto ps = detail::TrigSeries::draw(rng, spec.degree, 1.2 * spec.bound, 1.0);
    const double r0 = spec.r_min + 0.5 + rs.amplitude_bound();
    const double z_start = 0.5 * rng.next_signed();

    std::vector<double> r(static_cast<std::size_t>(n));
    std::vector<double> phi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      r[static_cast<std::size_t>(i)] = r0 + rs.eval(t);
      phi[static_cast<std::size_t>(i)] = kTwoPi * spec.h_target * t + ps.eval(t);
    }

    // Per-edge quantities; edge n-1 wraps to phi[0] + 2*pi*h.
    std::vector<double> dphi(static_cast<std::size_t>(n));
    std::vector<double> rbar2(static_cast<std::size_t>(n));
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      const double phi_next =
          i + 1 < n ? phi[j + 1] : phi[0] + kTwoPi * spec.h_target;
      dphi[j] = phi_next - phi[j];
      const double rb = 0.5 * (r[j] + r[static_cast<std::size_t>((i + 1) % n)]);
      rbar2[j] = rb * rb;
      g[j] = std::cos(kTwoPi * (static_cast<double>(i) + 0.5) / n);
    }
    double s0 = 0.0;
    double sg = 0.0;
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      s0 += rbar2[j] * dphi[j];
      sg += rbar2[j] * g[j];
    }
    if (std::abs(sg) < 1e-6 * n) continue;  // profile unusable for this draw
    const double delta = -s0 / sg;
    bool step_ok = true;
    for (int i = 0; i < n && step_ok; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      dphi[j] += delta * g[j];
      if (!(std::abs(dphi[j]) < kPi / 4.0)) step_ok = false;
    }
    if (!step_ok) continue;

    CylCurve c;
    c.samples.resize(static_cast<std::size_t>(n));
    double phi_acc = phi[0];
    double z_acc = z_start;
    for (int i = 0; i < n; ++i) {
      const std::size_t j = static_cast<std::size_t>(i);
      c.samples[j] = {static_cast<double>(i) / n, z_acc, r[j], phi_acc};
      phi_acc += dphi[j];
      z_acc -= rbar2[j] * dphi[j];
    }
    try {
      c.validate();
    } catch (const error&) {
      continue;
    }
    if (!is_legendrian(c).ok) continue;
    if (embedding_margin(c) < detail::kEmbedSeparation) continue;
    return c;
  }
  throw error(errc::generation,
              "generate_legendrian: no embedded Legendrian curve after " +
                  std::to_string(detail::kMaxGenerateAttempts) +
                  " attempts (seed " + std::to_string(spec.seed) + ")");
}

// Smooth seeded perturbation bounded by eps in each coordinate, preserving
// closure, positivity, genericity and embeddedness; eps is halved on
// validation failure.
inline HKnot perturb(const HKnot& k, double eps, std::uint64_t seed) {
  if (eps == 0.0) return k;
  if (!(eps > 0.0)) throw error(errc::invalid, "perturb: eps must be >= 0");
  k.validate();
  const double base_margin = embedding_margin(k);

  SeededRng rng(mix_seed(seed, 0xbf));
  constexpr int kDeg = 3;
  detail::TrigSeries dx = detail::TrigSeries::draw(rng, kDeg, 1.0, 1.0);
  detail::TrigSeries dy = detail::TrigSeries::draw(rng, kDeg, 1.0, 1.0);
  detail::TrigSeries dth = detail::TrigSeries::draw(rng, kDeg, 1.0, 1.0);
  const double nx = dx.amplitude_bound();
  const double ny = dy.amplitude_bound();
  const double nth = dth.amplitude_bound();
  if (nx == 0.0 || ny == 0.0 || nth == 0.0)
    throw error(errc::generation, "perturb: degenerate draw");

  for (int shrink = 0; shrink < 20; ++shrink) {
    const double e = eps * std::pow(0.5, shrink);
    HKnot out = k;
    for (auto& p : out.points) {
      p.x += (e / nx) * dx.eval(p.t);
      p.y += (e / ny) * dy.eval(p.t);
      p.theta += (e / nth) * dth.eval(p.t);
    }
    try {
      out.validate();
    } catch (const error&) {
      continue;
    }
    if (!is_generic(out, 1e-9)) continue;
    if (embedding_margin(out) < 0.5 * base_margin) continue;
    return out;
  }
  throw error(errc::generation,
              "perturb: could not keep the knot embedded and generic (eps " +
                  std::to_string(eps) + ", seed " + std::to_string(seed) + ")");
}

// Orientation reversal; keeps the basepoint and the ascending-t convention.
// The unwrapped angle is rebased by the total winding so the reversed
// sequence stays continuous (its winding negates).
inline HKnot reversed(const HKnot& k) {
  const std::size_t n = k.points.size();
  const double winding =
      k.points[n - 1].theta + k.dtheta(n - 1) - k.points[0].theta;
  HKnot out;
  out.points.resize(n);
  out.points[0] = k.points[0];
  for (std::size_t i = 1; i < n; ++i) {
    out.points[i] = k.points[n - i];
    out.points[i].t = 1.0 - k.points[n - i].t;
    out.points[i].theta -= winding;
  }
  return out;
}

inline CylCurve reversed(const CylCurve& c) {
  const std::size_t n = c.samples.size();
  const double winding =
      c.samples[n - 1].phi + c.dphi(n - 1) - c.samples[0].phi;
  CylCurve out;
  out.samples.resize(n);
  out.samples[0] = c.samples[0];
  for (std::size_t i = 1; i < n; ++i) {
    out.samples[i] = c.samples[n - i];
    out.samples[i].t = 1.0 - c.samples[n - i].t;
    out.samples[i].phi -= winding;
  }
  return out;
}

}  // namespace legcalc
