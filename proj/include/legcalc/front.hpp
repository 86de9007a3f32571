#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "legcalc/errors.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/oracles.hpp"

namespace legcalc {

// Front projection in the xz-chart: one knot component drawn as arcs that
// meet at cusps, no vertical tangents, over-strand at a crossing determined
// by the slope rule (smaller slope on top). The text form lists the cyclic
// traversal: a cusp marker, then the vertices of the arc that follows it.
struct FrontCusp {
  Vec2 pos;        // (x, z)
  bool down = false;  // knot traverses the cusp moving downward in z
  std::size_t line = 0;
};

struct FrontDiagram {
  std::vector<FrontCusp> cusps;
  std::vector<std::vector<Vec2>> arcs;  // arcs[i] follows cusps[i]

  // Closed traversal polyline: cusp 0, arc 0, cusp 1, arc 1, ...
  std::vector<Vec2> traversal() const {
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < cusps.size(); ++i) {
      out.push_back(cusps[i].pos);
      out.insert(out.end(), arcs[i].begin(), arcs[i].end());
    }
    return out;
  }
};

struct FrontTolerances {
  double slope_max = 1e3;  // |dz/dx| cap ("no vertical tangents")
  double slope_tol = 1e-6; // minimum slope difference at a crossing
};

namespace detail {

inline void validate_front(const FrontDiagram& f, const FrontTolerances& tol) {
  if (f.cusps.size() % 2 != 0)
    throw error(errc::parse,
                "front: odd cusp count (" + std::to_string(f.cusps.size()) + ")");
  if (f.cusps.size() < 2)
    throw error(errc::parse, "front: open component (need at least 2 cusps)");
  const std::vector<Vec2> tr = f.traversal();
  const std::size_t n = tr.size();

  // cusp index within the traversal -> position in tr
  std::vector<std::size_t> cusp_at(n, 0);
  {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < f.cusps.size(); ++i) {
      cusp_at[pos] = i + 1;  // 1-based; 0 = not a cusp
      pos += 1 + f.arcs[i].size();
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = tr[i];
    const Vec2 b = tr[(i + 1) % n];
    const double dx = b.x - a.x;
    const double dz = b.y - a.y;
    if (dx == 0.0)
      throw error(errc::parse, "front: vertical segment " + std::to_string(i),
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
    if (std::abs(dz / dx) > tol.slope_max)
      throw error(errc::parse,
                  "front: segment " + std::to_string(i) + " steeper than the slope bound",
                  degeneracy::none, static_cast<std::ptrdiff_t>(i));
  }

  // x-direction must flip exactly at cusps and nowhere else.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double dx_in = tr[j].x - tr[i].x;
    const double dx_out = tr[(j + 1) % n].x - tr[j].x;
    const bool flips = (dx_in > 0.0) != (dx_out > 0.0);
    const bool is_cusp = cusp_at[j] != 0;
    if (flips && !is_cusp)
      throw error(errc::parse,
                  "front: x-direction reverses away from a cusp at vertex " +
                      std::to_string(j));
    if (!flips && is_cusp)
      throw error(errc::parse,
                  "front: no x-direction reversal at cusp " +
                      std::to_string(cusp_at[j] - 1));
    if (is_cusp) {
      const FrontCusp& c = f.cusps[cusp_at[j] - 1];
      const double z_prev = tr[i].y;
      const double z_next = tr[(j + 1) % n].y;
      const bool geom_down = z_prev > c.pos.y && c.pos.y > z_next;
      const bool geom_up = z_prev < c.pos.y && c.pos.y < z_next;
      if (!geom_down && !geom_up)
        throw error(errc::parse,
                    "front: cusp " + std::to_string(cusp_at[j] - 1) +
                        " is not monotone in z (line " + std::to_string(c.line) + ")");
      if (geom_down != c.down)
        throw error(errc::parse,
                    "front: cusp " + std::to_string(cusp_at[j] - 1) +
                        " marked " + (c.down ? "down" : "up") +
                        " but traverses the other way (line " + std::to_string(c.line) +
                        ")");
    }
  }
}

}  // namespace detail

// Parses the `front v1` text format:
//
//   front v1
//   cusp up -5 1.5
//   -4 2.8
//   ...
//   cusp down 5 1.5
//   ...
//
// Each `cusp <down|up> <x> <z>` marker opens the arc that follows it; the
// last arc closes back to the first cusp. Blank lines and `#` comments are
// ignored. Errors carry the offending line number.
inline FrontDiagram parse_front(std::string_view text, const FrontTolerances& tol = {}) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  FrontDiagram f;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank

    if (!saw_header) {
      std::string version;
      if (tok != "front" || !(ls >> version) || version != "v1")
        throw error(errc::parse, "front: expected header 'front v1' on line " +
                                     std::to_string(lineno));
      saw_header = true;
      continue;
    }
    if (tok == "cusp") {
      std::string dir;
      double x = 0.0;
      double z = 0.0;
      if (!(ls >> dir >> x >> z) || (dir != "down" && dir != "up"))
        throw error(errc::parse,
                    "front: malformed cusp marker on line " + std::to_string(lineno));
      f.cusps.push_back({{x, z}, dir == "down", lineno});
      f.arcs.emplace_back();
      continue;
    }
    double x = 0.0;
    double z = 0.0;
    std::istringstream vs(line);
    if (!(vs >> x >> z))
      throw error(errc::parse, "front: malformed vertex line " + std::to_string(lineno));
    std::string extra;
    if (vs >> extra)
      throw error(errc::parse, "front: trailing tokens on line " + std::to_string(lineno));
    if (f.cusps.empty())
      throw error(errc::parse, "front: vertex before the first cusp marker on line " +
                                   std::to_string(lineno));
    f.arcs.back().push_back({x, z});
  }
  if (!saw_header) throw error(errc::parse, "front: missing header 'front v1'");
  detail::validate_front(f, tol);
  return f;
}

struct FrontCrossing {
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;
  double u_a = 0.0;
  double u_b = 0.0;
  Vec2 point;
  bool a_over = false;
  int sign = 0;
};

// Crossings of the traversal polyline with over-strand assigned by the
// slope rule and sign by the right-handed convention (positive iff the
// over tangent followed by the under tangent is a positive frame).
inline std::vector<FrontCrossing> front_crossing_signs(const FrontDiagram& f,
                                                       const FrontTolerances& tol = {}) {
  detail::validate_front(f, tol);
  const std::vector<Vec2> tr = f.traversal();
  const std::size_t n = tr.size();
  std::vector<FrontCrossing> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      SegCrossing cr;
      const SegRelation rel = classify_crossing(tr[i], tr[(i + 1) % n], tr[j],
                                                tr[(j + 1) % n], &cr);
      if (rel == SegRelation::disjoint) continue;
      if (rel == SegRelation::degenerate)
        throw error(errc::non_generic,
                    "front: segments " + std::to_string(i) + " and " + std::to_string(j) +
                        " touch non-transversally",
                    degeneracy::vertex_hit, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      const Vec2 ta = tr[(i + 1) % n] - tr[i];
      const Vec2 tb = tr[(j + 1) % n] - tr[j];
      const double slope_a = ta.y / ta.x;
      const double slope_b = tb.y / tb.x;
      if (std::abs(slope_a - slope_b) < tol.slope_tol)
        throw error(errc::non_generic,
                    "front: equal slopes at a crossing (segments " + std::to_string(i) +
                        ", " + std::to_string(j) + ")",
                    degeneracy::tangency, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      FrontCrossing c;
      c.seg_a = i;
      c.seg_b = j;
      c.u_a = cr.u;
      c.u_b = cr.v;
      c.point = cr.point;
      c.a_over = slope_a < slope_b;  // smaller slope is on top
      c.sign = c.a_over ? cross_sign(ta, tb) : cross_sign(tb, ta);
      out.push_back(c);
    }
  }
  return out;
}

inline long long front_writhe(const FrontDiagram& f, const FrontTolerances& tol = {}) {
  long long w = 0;
  for (const auto& c : front_crossing_signs(f, tol)) w += c.sign;
  return w;
}

// tb = writhe - (number of cusps)/2.
inline long long front_tb(const FrontDiagram& f, const FrontTolerances& tol = {}) {
  return front_writhe(f, tol) - static_cast<long long>(f.cusps.size()) / 2;
}

// mu = (cusps traversed downward - cusps traversed upward)/2.
inline long long front_mu(const FrontDiagram& f, const FrontTolerances& tol = {}) {
  detail::validate_front(f, tol);
  long long down = 0;
  long long up = 0;
  for (const auto& c : f.cusps) (c.down ? down : up) += 1;
  return (down - up) / 2;
}

// x -> -x. Slopes negate, so over/under swaps and the writhe negates;
// cusp traversal directions are untouched.
inline FrontDiagram mirrored(const FrontDiagram& f) {
  FrontDiagram out = f;
  for (auto& c : out.cusps) c.pos.x = -c.pos.x;
  for (auto& arc : out.arcs)
    for (auto& v : arc) v.x = -v.x;
  return out;
}

// Orientation reversal of the traversal; every cusp flips down <-> up.
inline FrontDiagram reversed(const FrontDiagram& f) {
  const std::size_t m = f.cusps.size();
  FrontDiagram out;
  out.cusps.resize(m);
  out.arcs.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.cusps[i] = f.cusps[(m - i) % m];
    out.cusps[i].down = !out.cusps[i].down;
    auto arc = f.arcs[m - 1 - i];  // the arc preceding that cusp originally
    std::reverse(arc.begin(), arc.end());
    out.arcs[i] = std::move(arc);
  }
  return out;
}

// Legendrian (xy) projection: a closed immersed polyline whose crossings
// carry explicit over/under data.
struct LagrangianCrossing {
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;  // seg_a < seg_b
  bool a_over = false;
};

struct LagrangianDiagram {
  std::vector<Vec2> vertices;
  std::vector<LagrangianCrossing> crossings;
};

// tb = writhe. The listed crossings must match the geometric ones exactly.
inline long long lagrangian_tb(const LagrangianDiagram& d) {
  const std::size_t n = d.vertices.size();
  if (n < 3) throw error(errc::invalid, "lagrangian: need >= 3 vertices");
  long long writhe = 0;
  std::size_t found = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      SegCrossing cr;
      const SegRelation rel =
          classify_crossing(d.vertices[i], d.vertices[(i + 1) % n], d.vertices[j],
                            d.vertices[(j + 1) % n], &cr);
      if (rel == SegRelation::disjoint) continue;
      if (rel == SegRelation::degenerate)
        throw error(errc::non_generic, "lagrangian: non-transversal contact",
                    degeneracy::vertex_hit, static_cast<std::ptrdiff_t>(i),
                    static_cast<std::ptrdiff_t>(j));
      const auto it = std::find_if(d.crossings.begin(), d.crossings.end(),
                                   [&](const LagrangianCrossing& c) {
                                     return c.seg_a == i && c.seg_b == j;
                                   });
      if (it == d.crossings.end())
        throw error(errc::invalid,
                    "lagrangian: crossing of segments " + std::to_string(i) + ", " +
                        std::to_string(j) + " has no over/under assignment");
      ++found;
      const Vec2 ta = d.vertices[(i + 1) % n] - d.vertices[i];
      const Vec2 tb = d.vertices[(j + 1) % n] - d.vertices[j];
      writhe += it->a_over ? cross_sign(ta, tb) : cross_sign(tb, ta);
    }
  }
  if (found != d.crossings.size())
    throw error(errc::invalid, "lagrangian: over/under data for crossings that do not exist");
  return writhe;
}

// mu = turning number of the projected curve.
inline long long lagrangian_mu(const LagrangianDiagram& d) {
  return turning_number(d.vertices).turns;
}

}  // namespace legcalc
