#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "legcalc/errors.hpp"
#include "legcalc/geom.hpp"
#include "legcalc/model.hpp"
#include "legcalc/oracles.hpp"
#include "legcalc/projection.hpp"

namespace legcalc {

// Unordered pair of integers [a, b], stored canonically with a <= b.
struct ChernovPair {
  long long a = 0;
  long long b = 0;

  static ChernovPair of(long long x, long long y) {
    return x <= y ? ChernovPair{x, y} : ChernovPair{y, x};
  }
  friend bool operator==(const ChernovPair&, const ChernovPair&) = default;
  friend auto operator<=>(const ChernovPair&, const ChernovPair&) = default;
};

// Finite integer combination of unordered pairs; zero coefficients are never
// stored, so equality of elements is equality of the term maps.
class ChernovElement {
 public:
  void add(ChernovPair p, long long coefficient) {
    if (coefficient == 0) return;
    const auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, coefficient);
    } else {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const std::map<ChernovPair, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  friend bool operator==(const ChernovElement&, const ChernovElement&) = default;

 private:
  std::map<ChernovPair, long long> terms_;
};

// m([a,b]) = a*b, extended linearly.
inline long long m_map(const ChernovElement& e) {
  long long total = 0;
  for (const auto& [pair, coefficient] : e.terms()) total += coefficient * pair.a * pair.b;
  return total;
}

namespace detail {

inline void track_residual(double* acc, double r) {
  if (acc != nullptr && r > *acc) *acc = r;
}

}  // namespace detail

// Fiber winding: (theta_end - theta_start) / 2*pi, where theta_end closes
// the unwrapped sequence by its principal wrap step.
inline long long homology_h(const HKnot& k, double* max_residual = nullptr) {
  k.validate();
  const std::size_t n = k.points.size();
  const double theta_end = k.points[n - 1].theta + k.dtheta(n - 1);
  double res = 0.0;
  const long long h =
      round_checked((theta_end - k.points[0].theta) / kTwoPi, "homology_h", &res);
  detail::track_residual(max_residual, res);
  return h;
}

// Rotation number: the turning number of the projected curve. The
// hyperbolic metric is conformal to the Euclidean chart metric, so the
// Euclidean turning angle is the right one.
inline long long rotation_r(const HKnot& k, double* max_residual = nullptr) {
  const PlanarCurve p = project(k);
  const TurningResult t = turning_number(p.vertices);
  detail::track_residual(max_residual, t.residual);
  return t.turns;
}

struct ArcHomologies {
  long long h_plus = 0;
  long long h_minus = 0;
};

namespace detail {

// theta advance along the knot from arc position `from` to arc position
// `to`, following the orientation (wrapping adds the full winding).
inline double theta_advance(double theta_from, double theta_to, double s_from,
                            double s_to, double theta_wrap) {
  return s_to > s_from ? theta_to - theta_from : theta_to + theta_wrap - theta_from;
}

}  // namespace detail

// Homologies of the two loops obtained by cutting the knot at a double
// point and closing each open arc with the fiber arc traversed in the +theta
// direction: f_d+ runs from d+ to d-, f_d- from d- to d+, so the two fiber
// arcs partition the fiber and h+ + h- = h + 1; that identity is enforced.
inline ArcHomologies arc_homologies(const HKnot& k, const DoublePoint& d,
                                    double* max_residual = nullptr) {
  const long long h = homology_h(k, max_residual);
  const double wrap = kTwoPi * static_cast<double>(h);
  const double knot_to_plus = detail::theta_advance(d.theta_minus, d.theta_plus,
                                                    d.s_minus, d.s_plus, wrap);
  const double knot_to_minus = detail::theta_advance(d.theta_plus, d.theta_minus,
                                                     d.s_plus, d.s_minus, wrap);
  const double fiber_plus = positive_mod_two_pi(d.theta_minus - d.theta_plus);
  const double fiber_minus = positive_mod_two_pi(d.theta_plus - d.theta_minus);
  double res_p = 0.0;
  double res_m = 0.0;
  ArcHomologies out;
  out.h_plus =
      round_checked((knot_to_plus + fiber_plus) / kTwoPi, "arc_homologies h+", &res_p);
  out.h_minus =
      round_checked((knot_to_minus + fiber_minus) / kTwoPi, "arc_homologies h-", &res_m);
  detail::track_residual(max_residual, res_p);
  detail::track_residual(max_residual, res_m);
  if (out.h_plus + out.h_minus != h + 1)
    throw error(errc::identity,
                "arc_homologies: h+ + h- = " + std::to_string(out.h_plus + out.h_minus) +
                    " but h + 1 = " + std::to_string(h + 1));
  return out;
}

// Weight of a double point: w_d = h(K_d+) - h(K_d-).
inline long long weight(const HKnot& k, const DoublePoint& d,
                        double* max_residual = nullptr) {
  const ArcHomologies a = arc_homologies(k, d, max_residual);
  return a.h_plus - a.h_minus;
}

// Winding number: sum of the weights of all transversal double points.
inline long long winding_w(const HKnot& k, const ProjectedDiagram& diagram,
                           double* max_residual = nullptr) {
  long long w = 0;
  for (const auto& d : diagram.doubles) w += weight(k, d, max_residual);
  return w;
}

inline long long winding_w(const HKnot& k, const DiagramTolerances& tol = {}) {
  return winding_w(k, project_diagram(k, tol));
}

// beta(K) = w(K) + r(K) h(K).
inline long long beta_formula(const HKnot& k, const ProjectedDiagram& diagram,
                              double* max_residual = nullptr) {
  return winding_w(k, diagram, max_residual) +
         rotation_r(k, max_residual) * homology_h(k, max_residual);
}

inline long long beta_formula(const HKnot& k, const DiagramTolerances& tol = {}) {
  return beta_formula(k, project_diagram(k, tol));
}

// I(K) = r(K)([h+1,-1] - [h-1,1]) + sum_d 2([h_d+, h_d- - 1] - [h_d+ - 1, h_d-]).
inline ChernovElement chernov_I(const HKnot& k, const ProjectedDiagram& diagram,
                                double* max_residual = nullptr) {
  const long long h = homology_h(k, max_residual);
  const long long r = rotation_r(k, max_residual);
  ChernovElement e;
  e.add(ChernovPair::of(h + 1, -1), r);
  e.add(ChernovPair::of(h - 1, 1), -r);
  for (const auto& d : diagram.doubles) {
    const ArcHomologies a = arc_homologies(k, d, max_residual);
    e.add(ChernovPair::of(a.h_plus, a.h_minus - 1), 2);
    e.add(ChernovPair::of(a.h_plus - 1, a.h_minus), -2);
  }
  return e;
}

inline ChernovElement chernov_I(const HKnot& k, const DiagramTolerances& tol = {}) {
  return chernov_I(k, project_diagram(k, tol));
}

// tb and mu of a Legendrian curve: tb = beta = w + r h, mu = r + h.
// Non-Legendrian input is refused with the residual.
inline std::pair<long long, long long> tb_mu(const CylCurve& c,
                                             double legendrian_tol = 1e-8,
                                             const DiagramTolerances& tol = {}) {
  c.validate();
  const LegendrianCheck lc = is_legendrian(c, legendrian_tol);
  if (!lc.ok)
    throw error(errc::invalid,
                "tb_mu: curve is not Legendrian (max residual " +
                    std::to_string(lc.max_residual) + " at step " +
                    std::to_string(lc.worst_step) + ")");
  const HKnot k = to_hcoords(c);
  const ProjectedDiagram diagram = project_diagram(k, tol);
  const long long tb = beta_formula(k, diagram);
  const long long mu = rotation_r(k) + homology_h(k);
  return {tb, mu};
}

struct WeightEntry {
  std::size_t id = 0;
  long long w_d = 0;
  long long h_plus = 0;
  long long h_minus = 0;
};

struct ReportOptions {
  bool with_oracles = false;
  bool legendrian = false;
  DiagramTolerances dtol{};
  double eps = 0.0;  // 0 = derive from the embedding margin
  std::uint64_t seed = 0x6f7261636cULL;
  double legendrian_tol = 1e-8;
};

// Everything the library can say about one knot, with oracle cross-checks
// and per-identity pass/fail flags. beta is computed as w + r h by
// construction; the flags record whether the oracles agree.
struct InvariantReport {
  long long h = 0;
  long long r = 0;
  long long w = 0;
  long long beta = 0;
  std::optional<long long> tb;
  std::optional<long long> mu;
  std::vector<WeightEntry> weights;
  long long chernov_m = 0;
  std::optional<long long> beta_oracle_value;
  std::optional<long long> tb_oracle_value;
  std::optional<long long> mu_oracle_value;
  double oracle_eps = 0.0;
  std::uint64_t oracle_seed = 0;
  double max_residual = 0.0;
  std::optional<double> legendrian_residual;
  ReportOptions options;
  std::map<std::string, bool> flags;

  bool all_ok() const {
    for (const auto& [name, ok] : flags)
      if (!ok) return false;
    return true;
  }
};

// Runs all applicable invariants and oracles over one knot. Identity
// failures are recorded in flags, never dropped; the hard internal
// assertions (fiber split, Proposition (w)) throw instead.
inline InvariantReport full_report(const HKnot& k, const ReportOptions& opts = {}) {
  InvariantReport rep;
  rep.options = opts;
  const ProjectedDiagram diagram = project_diagram(k, opts.dtol);
  rep.h = homology_h(k, &rep.max_residual);
  rep.r = rotation_r(k, &rep.max_residual);
  for (std::size_t i = 0; i < diagram.doubles.size(); ++i) {
    const ArcHomologies a = arc_homologies(k, diagram.doubles[i], &rep.max_residual);
    rep.weights.push_back({i, a.h_plus - a.h_minus, a.h_plus, a.h_minus});
    rep.w += a.h_plus - a.h_minus;
  }
  rep.beta = rep.w + rep.r * rep.h;
  rep.chernov_m = m_map(chernov_I(k, diagram, &rep.max_residual));
  rep.flags["fiber_split"] = true;  // enforced inside arc_homologies
  const bool prop_w = rep.chernov_m + 2 * rep.w + 2 * rep.r * rep.h == 0;
  rep.flags["prop_w"] = prop_w;
  if (!prop_w)
    throw error(errc::identity, "full_report: m(I) + 2w + 2rh != 0 (internal assertion)");

  if (opts.with_oracles) {
    const OracleResult bo = beta_oracle(k, opts.eps, opts.seed);
    rep.beta_oracle_value = bo.value;
    rep.oracle_eps = bo.eps;
    rep.oracle_seed = bo.seed;
    rep.flags["beta_matches_oracle"] = rep.beta == bo.value;
    rep.flags["prop_l"] = rep.chernov_m + 2 * bo.value == 0;
  }
  return rep;
}

inline InvariantReport full_report(const CylCurve& c, const ReportOptions& opts = {}) {
  c.validate();
  const LegendrianCheck lc = is_legendrian(c, opts.legendrian_tol);
  if (opts.legendrian && !lc.ok)
    throw error(errc::invalid,
                "full_report: curve is not Legendrian (max residual " +
                    std::to_string(lc.max_residual) + " at step " +
                    std::to_string(lc.worst_step) + ")");
  const HKnot k = to_hcoords(c);
  InvariantReport rep = full_report(k, opts);
  rep.legendrian_residual = lc.max_residual;
  if (opts.legendrian) {
    rep.tb = rep.beta;
    rep.mu = rep.r + rep.h;
    if (opts.with_oracles) {
      const OracleResult to = tb_oracle(c, opts.eps, mix_seed(opts.seed, 0x7462),
                                        opts.legendrian_tol);
      rep.tb_oracle_value = to.value;
      rep.flags["tb_matches_oracle"] = *rep.tb == to.value;
      if (rep.beta_oracle_value)
        rep.flags["tb_equals_beta_oracle"] = to.value == *rep.beta_oracle_value;
      const TurningResult mo = mu_oracle(c);
      detail::track_residual(&rep.max_residual, mo.residual);
      rep.mu_oracle_value = mo.turns;
      rep.flags["mu_matches_oracle"] = *rep.mu == mo.turns;
    }
  }
  return rep;
}

}  // namespace legcalc
