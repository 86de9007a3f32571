#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "legcalc/errors.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/model.hpp"
#include "legcalc/rng.hpp"

namespace legcalc {

struct TurningResult {
  long long turns = 0;
  double residual = 0.0;
};

// Turning number of a closed polyline: sum of signed exterior angles over
// 2*pi, residual-checked. An exterior angle within reversal_tol of +-pi
// means the polyline is not an immersion at that vertex.
inline TurningResult turning_number(std::span<const Vec2> vertices,
                                    double reversal_tol = 1e-6) {
  const std::size_t n = vertices.size();
  if (n < 3) throw error(errc::invalid, "turning_number: need >= 3 vertices");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 prev = vertices[i] - vertices[(i + n - 1) % n];
    const Vec2 next = vertices[(i + 1) % n] - vertices[i];
    if (prev.norm() == 0.0 || next.norm() == 0.0)
      throw error(errc::non_generic,
                  "turning_number: zero-length segment at vertex " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    const double angle = std::atan2(prev.cross(next), prev.dot(next));
    if (kPi - std::abs(angle) < reversal_tol)
      throw error(errc::non_generic,
                  "turning_number: reversal at vertex " + std::to_string(i),
                  degeneracy::reversal, static_cast<std::ptrdiff_t>(i));
    total += angle;
  }
  TurningResult out;
  out.turns = round_checked(total / kTwoPi, "turning_number", &out.residual);
  return out;
}

struct LinkingOptions {
  std::uint64_t seed = 0x6c65676361ULL;
  int directions = 3;       // accepted projection directions that must agree
  int max_tries = 256;
  double min_separation = 1e-12;  // refuse components closer than this
};

struct LinkingResult {
  long long lk = 0;
  std::uint64_t seed = 0;
  int tried = 0;  // directions drawn (accepted + rejected)
};

namespace detail {

struct ProjectedSegs {
  std::vector<Vec2> pts;
  std::vector<double> depth;
};

inline ProjectedSegs project_onto(const Polyline3& c, const Vec3& e1, const Vec3& e2,
                                  const Vec3& nu) {
  ProjectedSegs out;
  out.pts.reserve(c.vertices.size());
  out.depth.reserve(c.vertices.size());
  for (const auto& p : c.vertices) {
    out.pts.push_back({p.dot(e1), p.dot(e2)});
    out.depth.push_back(p.dot(nu));
  }
  return out;
}

// Signed crossing count of a over b in a fixed projection. Returns false if
// the direction is inadmissible (touching configuration, crossing at a
// vertex, near-parallel strands, suspicious depth gap, odd parity).
inline bool signed_crossing_sum(const ProjectedSegs& a, const ProjectedSegs& b,
                                double min_sep3, long long* sum_out) {
  const std::size_t na = a.pts.size();
  const std::size_t nb = b.pts.size();
  constexpr double kUGuard = 1e-9;
  constexpr double kSinGuard = 1e-9;
  long long sum = 0;
  for (std::size_t i = 0; i < na; ++i) {
    const Vec2 a1 = a.pts[i];
    const Vec2 a2 = a.pts[(i + 1) % na];
    const double axlo = std::min(a1.x, a2.x), axhi = std::max(a1.x, a2.x);
    const double aylo = std::min(a1.y, a2.y), ayhi = std::max(a1.y, a2.y);
    for (std::size_t j = 0; j < nb; ++j) {
      const Vec2 b1 = b.pts[j];
      const Vec2 b2 = b.pts[(j + 1) % nb];
      if (std::min(b1.x, b2.x) > axhi || std::max(b1.x, b2.x) < axlo ||
          std::min(b1.y, b2.y) > ayhi || std::max(b1.y, b2.y) < aylo)
        continue;
      SegCrossing cr;
      const SegRelation rel = classify_crossing(a1, a2, b1, b2, &cr);
      if (rel == SegRelation::disjoint) continue;
      if (rel == SegRelation::degenerate) return false;
      if (cr.u < kUGuard || cr.u > 1.0 - kUGuard || cr.v < kUGuard ||
          cr.v > 1.0 - kUGuard)
        return false;
      const Vec2 ta = a2 - a1;
      const Vec2 tb = b2 - b1;
      if (abs_sin_angle(ta, tb) < kSinGuard) return false;
      const double da = a.depth[i] + cr.u * (a.depth[(i + 1) % na] - a.depth[i]);
      const double db = b.depth[j] + cr.v * (b.depth[(j + 1) % nb] - b.depth[j]);
      const double gap = da - db;
      if (std::abs(gap) < 0.25 * min_sep3) return false;
      const int sign = gap > 0.0 ? cross_sign(ta, tb) : cross_sign(tb, ta);
      sum += sign;
    }
  }
  if (sum % 2 != 0) return false;
  *sum_out = sum;
  return true;
}

}  // namespace detail

// Linking number of two disjoint closed polylines by signed crossing count
// in a seeded random projection; a positive crossing is one where (tangent
// of the over strand, tangent of the under strand) is a positive frame of
// the viewing plane. Degenerate directions are retried; `directions`
// accepted projections must agree exactly.
inline LinkingResult linking_number(const Polyline3& a, const Polyline3& b,
                                    const LinkingOptions& opt = {}) {
  const double sep = min_pair_separation(a, b);
  if (!(sep > opt.min_separation))
    throw error(errc::invalid, "linking_number: components too close (separation " +
                                   std::to_string(sep) + ")");
  SeededRng rng(opt.seed);
  LinkingResult out;
  out.seed = opt.seed;
  int accepted = 0;
  long long value = 0;
  for (int attempt = 0; attempt < opt.max_tries && accepted < opt.directions; ++attempt) {
    ++out.tried;
    const double zc = rng.next_signed();
    const double az = kTwoPi * rng.next_unit();
    const double rho = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const Vec3 nu{rho * std::cos(az), rho * std::sin(az), zc};
    const Vec3 axis = std::abs(nu.x) <= std::abs(nu.y)
                          ? (std::abs(nu.x) <= std::abs(nu.z) ? Vec3{1, 0, 0} : Vec3{0, 0, 1})
                          : (std::abs(nu.y) <= std::abs(nu.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    const Vec3 e1 = nu.cross(axis).normalized();
    const Vec3 e2 = nu.cross(e1);  // (e1, e2, nu) right-handed
    const auto pa = detail::project_onto(a, e1, e2, nu);
    const auto pb = detail::project_onto(b, e1, e2, nu);
    long long sum = 0;
    if (!detail::signed_crossing_sum(pa, pb, sep, &sum)) continue;
    const long long lk = sum / 2;
    if (accepted == 0) {
      value = lk;
    } else if (lk != value) {
      throw error(errc::identity,
                  "linking_number: projection directions disagree (" +
                      std::to_string(value) + " vs " + std::to_string(lk) + ")");
    }
    ++accepted;
  }
  if (accepted < opt.directions)
    throw error(errc::generation,
                "linking_number: no admissible projection directions (seed " +
                    std::to_string(opt.seed) + ")");
  out.lk = value;
  return out;
}

struct OracleResult {
  long long value = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
};

// Self-linking via the fiber pushoff theta -> theta + eps: lk(K, K').
// eps defaults to 1e-3 x the embedding margin and the result must be stable
// under halving eps.
inline OracleResult beta_oracle(const HKnot& k, double eps = 0.0,
                                std::uint64_t seed = 0x62657461ULL) {
  k.validate();
  const Polyline3 base = to_uvz(k);
  if (eps == 0.0) {
    const double margin = min_self_separation(base);
    if (!(margin > 0.0))
      throw error(errc::invalid, "beta_oracle: knot is not embedded");
    eps = 1e-3 * margin;
  }
  const auto pushed = [&](double e) {
    HKnot kk = k;
    for (auto& p : kk.points) p.theta += e;
    return to_uvz(kk);
  };
  LinkingOptions opt;
  opt.seed = mix_seed(seed, 1);
  const LinkingResult full = linking_number(base, pushed(eps), opt);
  opt.seed = mix_seed(seed, 2);
  const LinkingResult half = linking_number(base, pushed(0.5 * eps), opt);
  if (full.lk != half.lk)
    throw error(errc::identity,
                "beta_oracle: unstable under eps halving (" + std::to_string(full.lk) +
                    " vs " + std::to_string(half.lk) + ")");
  return {full.lk, eps, seed};
}

namespace detail {

// Pushoff of a Legendrian curve along the contact framing: the curve
// tangent is projected into ker(dz + r^2 dphi) -- spanned by the oriented
// orthogonal frame (d_r, d_phi - r^2 d_z) -- and rotated a quarter turn
// within the plane.
inline Polyline3 contact_frame_pushoff(const CylCurve& c, double eps_len) {
  const Polyline3 base = to_uvz(c);
  const std::size_t n = base.vertices.size();
  Polyline3 out;
  out.vertices.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = c.samples[i];
    const Vec3 e1{std::cos(s.phi), std::sin(s.phi), 0.0};
    const Vec3 raw2{-s.r * std::sin(s.phi), s.r * std::cos(s.phi), -s.r * s.r};
    const Vec3 e2 = raw2 * (1.0 / raw2.norm());
    const Vec3 tangent = base.vertices[(i + 1) % n] - base.vertices[(i + n - 1) % n];
    const double a = tangent.dot(e1);
    const double b = tangent.dot(e2);
    const double len = std::hypot(a, b);
    if (!(len > 0.0))
      throw error(errc::non_generic,
                  "tb_oracle: tangent orthogonal to the contact plane at sample " +
                      std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    const Vec3 normal = (e1 * (-b / len)) + (e2 * (a / len));
    out.vertices[i] = base.vertices[i] + normal * eps_len;
  }
  return out;
}

}  // namespace detail

// Thurston-Bennequin number via the contact framing: lk of the curve with
// its pushoff along the quarter-turned in-plane tangent. Refuses
// non-Legendrian input.
inline OracleResult tb_oracle(const CylCurve& c, double eps = 0.0,
                              std::uint64_t seed = 0x74620aULL,
                              double legendrian_tol = 1e-8) {
  c.validate();
  const LegendrianCheck lc = is_legendrian(c, legendrian_tol);
  if (!lc.ok)
    throw error(errc::invalid, "tb_oracle: curve is not Legendrian (max residual " +
                                   std::to_string(lc.max_residual) + ")");
  if (eps == 0.0) {
    const double margin = min_self_separation(to_uvz(c));
    if (!(margin > 0.0)) throw error(errc::invalid, "tb_oracle: curve is not embedded");
    eps = 1e-3 * margin;
  }
  const Polyline3 base = to_uvz(c);
  LinkingOptions opt;
  opt.seed = mix_seed(seed, 1);
  const LinkingResult full = linking_number(base, detail::contact_frame_pushoff(c, eps), opt);
  opt.seed = mix_seed(seed, 2);
  const LinkingResult half =
      linking_number(base, detail::contact_frame_pushoff(c, 0.5 * eps), opt);
  if (full.lk != half.lk)
    throw error(errc::identity,
                "tb_oracle: unstable under eps halving (" + std::to_string(full.lk) +
                    " vs " + std::to_string(half.lk) + ")");
  return {full.lk, eps, seed};
}

// Maslov index as the Gauss-map degree of the (u, v) = (r cos phi, r sin phi)
// projection: the turning number of that polyline.
inline TurningResult mu_oracle(const CylCurve& c) {
  c.validate();
  std::vector<Vec2> uv;
  uv.reserve(c.samples.size());
  for (const auto& s : c.samples)
    uv.push_back({s.r * std::cos(s.phi), s.r * std::sin(s.phi)});
  return turning_number(uv);
}

}  // namespace legcalc
