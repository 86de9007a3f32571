#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "legcalc/errors.hpp"

namespace legcalc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::hypot(x, y); }
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    return {x / n, y / n, z / n};
  }
};

// Closed 3D polyline in the Euclidean (u,v,z) chart; vertex i connects to
// vertex (i+1) mod n.
struct Polyline3 {
  std::vector<Vec3> vertices;
};

namespace detail {

inline int exact_orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  using R = boost::multiprecision::cpp_rational;
  const R det = (R(b.x) - R(a.x)) * (R(c.y) - R(a.y)) -
                (R(b.y) - R(a.y)) * (R(c.x) - R(a.x));
  return det.sign();
}

}  // namespace detail

// Sign of the signed area of triangle (a,b,c): +1 counterclockwise,
// -1 clockwise, 0 collinear. Float fast path with a forward error bound;
// exact rational fallback when the filter cannot certify the sign.
inline int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double detl = (b.x - a.x) * (c.y - a.y);
  const double detr = (b.y - a.y) * (c.x - a.x);
  const double det = detl - detr;
  const double detsum = std::abs(detl) + std::abs(detr);
  constexpr double kFilter = 3.3306690738754716e-16;  // (3 + 16 eps) eps
  if (det > kFilter * detsum) return 1;
  if (-det > kFilter * detsum) return -1;
  if (detsum == 0.0) return 0;
  return detail::exact_orient2d(a, b, c);
}

// Sign of det[u, v] for direction vectors, exact.
inline int cross_sign(const Vec2& u, const Vec2& v) {
  return orient2d(Vec2{0.0, 0.0}, u, v);
}

enum class SegRelation { disjoint, proper, degenerate };

struct SegCrossing {
  double u = 0.0;  // parameter on segment a, in (0,1) for proper crossings
  double v = 0.0;  // parameter on segment b
  Vec2 point;
};

namespace detail {

// For a point known to be collinear with [p,q]: is it inside the closed
// segment? Coordinate comparison is exact.
inline bool collinear_on_segment(const Vec2& p, const Vec2& q, const Vec2& r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

}  // namespace detail

// Classifies the intersection of closed segments [a1,a2] and [b1,b2].
// `proper` means a single transversal crossing interior to both segments;
// parameters and the (inexact) crossing point are filled in. Touching
// configurations -- an endpoint on the other segment, shared endpoints,
// collinear overlap -- are `degenerate` (the orientation signs are exact,
// so the classification is too).
inline SegRelation classify_crossing(const Vec2& a1, const Vec2& a2,
                                     const Vec2& b1, const Vec2& b2,
                                     SegCrossing* out = nullptr) {
  const int o1 = orient2d(a1, a2, b1);
  const int o2 = orient2d(a1, a2, b2);
  const int o3 = orient2d(b1, b2, a1);
  const int o4 = orient2d(b1, b2, a2);

  if (o1 * o2 < 0 && o3 * o4 < 0) {
    if (out != nullptr) {
      const Vec2 r = a2 - a1;
      const Vec2 s = b2 - b1;
      const double denom = r.cross(s);  // nonzero: strict straddle both ways
      out->u = (b1 - a1).cross(s) / denom;
      out->v = (b1 - a1).cross(r) / denom;
      out->point = a1 + r * out->u;
    }
    return SegRelation::proper;
  }
  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) return SegRelation::disjoint;

  if (o1 == 0 && detail::collinear_on_segment(a1, a2, b1)) return SegRelation::degenerate;
  if (o2 == 0 && detail::collinear_on_segment(a1, a2, b2)) return SegRelation::degenerate;
  if (o3 == 0 && detail::collinear_on_segment(b1, b2, a1)) return SegRelation::degenerate;
  if (o4 == 0 && detail::collinear_on_segment(b1, b2, a2)) return SegRelation::degenerate;
  return SegRelation::disjoint;
}

// |sin| of the angle between two direction vectors.
inline double abs_sin_angle(const Vec2& u, const Vec2& v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::abs(u.cross(v)) / (nu * nv);
}

inline double point_segment_distance(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = ab.dot(ab);
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + ab * t)).norm();
}

// Minimum distance between closed segments [p1,q1], [p2,q2] (Ericson).
inline double segment_segment_distance(const Vec3& p1, const Vec3& q1,
                                       const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1;
  const Vec3 d2 = q2 - p2;
  const Vec3 r = p1 - p2;
  const double a = d1.dot(d1);
  const double e = d2.dot(d2);
  const double f = d2.dot(r);
  double s = 0.0;
  double t = 0.0;
  if (a == 0.0 && e == 0.0) {
    return r.norm();
  }
  if (a == 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e == 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      if (denom != 0.0) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 c1 = p1 + d1 * s;
  const Vec3 c2 = p2 + d2 * t;
  return (c1 - c2).norm();
}

// Minimum separation between non-adjacent segments of one closed polyline.
// This is the embeddedness margin used by the generators and the oracles.
inline double min_self_separation(const Polyline3& p) {
  const std::size_t n = p.vertices.size();
  if (n < 4) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a1 = p.vertices[i];
    const Vec3& a2 = p.vertices[(i + 1) % n];
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // wrap-adjacent
      const double d = segment_segment_distance(a1, a2, p.vertices[j],
                                                p.vertices[(j + 1) % n]);
      best = std::min(best, d);
    }
  }
  return best;
}

// Minimum separation between two closed polylines.
inline double min_pair_separation(const Polyline3& a, const Polyline3& b) {
  const std::size_t na = a.vertices.size();
  const std::size_t nb = b.vertices.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < na; ++i) {
    const Vec3& a1 = a.vertices[i];
    const Vec3& a2 = a.vertices[(i + 1) % na];
    for (std::size_t j = 0; j < nb; ++j) {
      const double d = segment_segment_distance(a1, a2, b.vertices[j],
                                                b.vertices[(j + 1) % nb]);
      best = std::min(best, d);
    }
  }
  return best;
}

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Principal value in (-pi, pi].
inline double wrap_to_pi(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

// Value in [0, 2*pi).
inline double positive_mod_two_pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

// Nearest-integer extraction with the project-wide residual bound: float
// noise must stay far from half-integers or the computation is rejected
// rather than silently rounded.
inline long long round_checked(double v, const char* what,
                               double* residual_out = nullptr,
                               double bound = 1e-6) {
  const double r = std::nearbyint(v);
  const double residual = std::abs(v - r);
  if (residual_out != nullptr) *residual_out = residual;
  if (!(residual < bound)) {
    throw error(errc::identity, std::string(what) + ": rounding residual " +
                                    std::to_string(residual) +
                                    " exceeds bound");
  }
  return static_cast<long long>(r);
}

}  // namespace legcalc
