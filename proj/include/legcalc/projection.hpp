#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "legcalc/errors.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/model.hpp"

namespace legcalc {

// Projection of an HKnot to the upper half-plane chart. Vertex i is the
// image of knot point i (the back-reference), and theta[i] carries the
// unwrapped fiber coordinate so double points can be lifted again.
// theta_wrap is the total theta advance over one loop (2*pi*h).
struct PlanarCurve {
  std::vector<Vec2> vertices;
  std::vector<double> theta;
  double theta_wrap = 0.0;

  std::size_t size() const { return vertices.size(); }

  Vec2 vertex_after(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }

  // Direction of segment i (not normalized).
  Vec2 tangent(std::size_t i) const { return vertex_after(i) - vertices[i]; }

  // Unwrapped theta at parameter u along segment i.
  double theta_at(std::size_t i, double u) const {
    const std::size_t n = vertices.size();
    const double t0 = theta[i];
    const double t1 = i + 1 < n ? theta[i + 1] : theta[0] + theta_wrap;
    return t0 + u * (t1 - t0);
  }
};

inline PlanarCurve project(const HKnot& k) {
  k.validate();
  PlanarCurve p;
  const std::size_t n = k.points.size();
  p.vertices.reserve(n);
  p.theta.reserve(n);
  for (const auto& q : k.points) {
    p.vertices.push_back({q.x, q.y});
    p.theta.push_back(q.theta);
  }
  p.theta_wrap = k.points[n - 1].theta + k.dtheta(n - 1) - k.points[0].theta;
  for (std::size_t i = 0; i < n; ++i) {
    if (p.vertices[i].x == p.vertex_after(i).x && p.vertices[i].y == p.vertex_after(i).y)
      throw error(errc::non_generic,
                  "project: zero-length projected segment " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
  }
  return p;
}

// A transversal double point of the projected curve. The preimage on the
// earlier segment (seg_a) is d+ iff plus_first: the convention is that the
// projected tangent at d+, followed by the one at d-, is a positively
// oriented basis of the plane.
struct DoublePoint {
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;
  double u_a = 0.0;
  double u_b = 0.0;
  Vec2 point;
  bool plus_first = true;
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double s_plus = 0.0;   // arc position (segment index + parameter) of d+
  double s_minus = 0.0;
};

struct DiagramTolerances {
  double angle_tol = 1e-3;  // minimum |sin| of the crossing angle
  double sep_tol = 1e-6;    // minimum distance between two double points
  double u_tol = 1e-9;      // minimum parameter distance from segment ends
};

struct ProjectedDiagram {
  PlanarCurve curve;
  std::vector<DoublePoint> doubles;
};

// Assigns d+/d- at a raw transversal intersection. sign(det[T_a, T_b]) is
// evaluated exactly; zero is a tangency and is refused.
inline DoublePoint label_preimages(std::size_t seg_a, double u_a, std::size_t seg_b,
                                   double u_b, const Vec2& point,
                                   const PlanarCurve& p) {
  DoublePoint d;
  d.seg_a = seg_a;
  d.seg_b = seg_b;
  d.u_a = u_a;
  d.u_b = u_b;
  d.point = point;
  const int s = cross_sign(p.tangent(seg_a), p.tangent(seg_b));
  if (s == 0)
    throw error(errc::non_generic, "label_preimages: parallel tangents",
                degeneracy::tangency, static_cast<std::ptrdiff_t>(seg_a),
                static_cast<std::ptrdiff_t>(seg_b));
  d.plus_first = s > 0;
  const double theta_a = p.theta_at(seg_a, u_a);
  const double theta_b = p.theta_at(seg_b, u_b);
  const double s_a = static_cast<double>(seg_a) + u_a;
  const double s_b = static_cast<double>(seg_b) + u_b;
  d.theta_plus = d.plus_first ? theta_a : theta_b;
  d.theta_minus = d.plus_first ? theta_b : theta_a;
  d.s_plus = d.plus_first ? s_a : s_b;
  d.s_minus = d.plus_first ? s_b : s_a;
  return d;
}

// All transversal double points of the projected curve, sorted by
// (seg_a, u_a). Non-adjacent segment pairs only; every crossing must be
// interior (u_tol), transversal (angle_tol) and isolated (sep_tol), else a
// NonGeneric error naming the offending segments is thrown.
inline ProjectedDiagram find_double_points(const PlanarCurve& p,
                                           const DiagramTolerances& tol = {}) {
  const std::size_t n = p.vertices.size();
  ProjectedDiagram diagram;
  diagram.curve = p;

  // bounding boxes per segment for cheap rejection
  std::vector<double> xlo(n), xhi(n), ylo(n), yhi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = p.vertices[i];
    const Vec2 b = p.vertex_after(i);
    xlo[i] = std::min(a.x, b.x);
    xhi[i] = std::max(a.x, b.x);
    ylo[i] = std::min(a.y, b.y);
    yhi[i] = std::max(a.y, b.y);
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // wrap-adjacent
      if (xlo[j] > xhi[i] || xhi[j] < xlo[i] || ylo[j] > yhi[i] || yhi[j] < ylo[i])
        continue;
      SegCrossing cr;
      const SegRelation rel = classify_crossing(p.vertices[i], p.vertex_after(i),
                                                p.vertices[j], p.vertex_after(j), &cr);
      if (rel == SegRelation::disjoint) continue;
      if (rel == SegRelation::degenerate)
        throw error(errc::non_generic,
                    "find_double_points: crossing through a vertex (segments " +
                        std::to_string(i) + ", " + std::to_string(j) + ")",
                    degeneracy::vertex_hit, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      if (cr.u < tol.u_tol || cr.u > 1.0 - tol.u_tol || cr.v < tol.u_tol ||
          cr.v > 1.0 - tol.u_tol)
        throw error(errc::non_generic,
                    "find_double_points: crossing too close to a vertex (segments " +
                        std::to_string(i) + ", " + std::to_string(j) + ")",
                    degeneracy::vertex_hit, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      if (abs_sin_angle(p.tangent(i), p.tangent(j)) < tol.angle_tol)
        throw error(errc::non_generic,
                    "find_double_points: near-tangential crossing (segments " +
                        std::to_string(i) + ", " + std::to_string(j) + ")",
                    degeneracy::tangency, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      diagram.doubles.push_back(label_preimages(i, cr.u, j, cr.v, cr.point, p));
    }
  }

  std::sort(diagram.doubles.begin(), diagram.doubles.end(),
            [](const DoublePoint& a, const DoublePoint& b) {
              return a.seg_a != b.seg_a ? a.seg_a < b.seg_a : a.u_a < b.u_a;
            });
  for (std::size_t i = 0; i < diagram.doubles.size(); ++i) {
    for (std::size_t j = i + 1; j < diagram.doubles.size(); ++j) {
      const Vec2 d = diagram.doubles[i].point - diagram.doubles[j].point;
      if (d.norm() < tol.sep_tol)
        throw error(errc::non_generic,
                    "find_double_points: double points closer than sep_tol (segments " +
                        std::to_string(diagram.doubles[i].seg_a) + "/" +
                        std::to_string(diagram.doubles[i].seg_b) + " and " +
                        std::to_string(diagram.doubles[j].seg_a) + "/" +
                        std::to_string(diagram.doubles[j].seg_b) + ")",
                    degeneracy::triple_point,
                    static_cast<std::ptrdiff_t>(diagram.doubles[i].seg_a),
                    static_cast<std::ptrdiff_t>(diagram.doubles[j].seg_a));
    }
  }
  return diagram;
}

inline ProjectedDiagram project_diagram(const HKnot& k, const DiagramTolerances& tol = {}) {
  return find_double_points(project(k), tol);
}

// Conservative bound on how far the diagram can be perturbed without
// changing its combinatorics: the least of the angle, separation, vertex
// and segment-length slacks, length-scaled.
inline double diagram_stability_margin(const ProjectedDiagram& diagram,
                                       const DiagramTolerances& tol = {}) {
  const PlanarCurve& p = diagram.curve;
  const std::size_t n = p.size();
  double margin = std::numeric_limits<double>::infinity();
  double min_len = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) min_len = std::min(min_len, p.tangent(i).norm());
  margin = std::min(margin, 0.5 * min_len);
  for (const auto& d : diagram.doubles) {
    const double la = p.tangent(d.seg_a).norm();
    const double lb = p.tangent(d.seg_b).norm();
    const double lmin = std::min(la, lb);
    const double sin_slack =
        abs_sin_angle(p.tangent(d.seg_a), p.tangent(d.seg_b)) - tol.angle_tol;
    margin = std::min(margin, 0.5 * sin_slack * lmin);
    const double u_slack = std::min({d.u_a, 1.0 - d.u_a, d.u_b, 1.0 - d.u_b});
    margin = std::min(margin, u_slack * lmin);
  }
  for (std::size_t i = 0; i < diagram.doubles.size(); ++i)
    for (std::size_t j = i + 1; j < diagram.doubles.size(); ++j)
      margin = std::min(margin,
                        0.5 * ((diagram.doubles[i].point - diagram.doubles[j].point).norm() -
                               tol.sep_tol));
  return std::max(margin, 0.0);
}

}  // namespace legcalc
