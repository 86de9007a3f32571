#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "legcalc/errors.hpp"
#include "legcalc/front.hpp"
#include "legcalc/invariants.hpp"
#include "legcalc/io.hpp"
#include "legcalc/model.hpp"
#include "legcalc/oracles.hpp"
#include "legcalc/projection.hpp"

namespace legcalc {

// Exit-code contract: 0 ok, 2 parse error, 3 non-generic/invalid input,
// 4 identity-check failure, 5 generation failure.
inline int exit_code_for(errc code) {
  switch (code) {
    case errc::parse:
      return 2;
    case errc::invalid:
    case errc::non_generic:
      return 3;
    case errc::identity:
      return 4;
    case errc::generation:
      return 5;
  }
  return 1;
}

inline nlohmann::json error_json(const error& e) {
  nlohmann::json j;
  j["error"] = e.what();
  j["exit"] = exit_code_for(e.code());
  if (e.index_a() >= 0) j["index_a"] = e.index_a();
  if (e.index_b() >= 0) j["index_b"] = e.index_b();
  return j;
}

enum class Family { legendrian, generic };

inline const char* family_name(Family f) {
  return f == Family::legendrian ? "legendrian" : "generic";
}

struct SuiteConfig {
  int n_trials = 1;
  std::uint64_t seed = 1;
  Family family = Family::generic;
  int degree = 3;
  double bound = 0.25;
  int h_min = -3;
  int h_max = 3;
  int samples = 512;
  double r_min = 0.25;
  DiagramTolerances dtol{};
  double legendrian_tol = 1e-8;
  int max_regen = 32;
  std::string out_dir;  // where counterexample files are written

  void validate() const {
    if (n_trials < 1) throw error(errc::invalid, "suite: n_trials must be >= 1");
    if (h_min > h_max) throw error(errc::invalid, "suite: empty h range");
  }
};

// One deterministically generated suite knot. Trials whose random draw
// produces a degenerate diagram (or a (u,v) reversal, for Legendrian
// trials) are regenerated with the next derived sub-seed.
struct TrialKnot {
  std::uint64_t trial_seed = 0;
  int h_target = 0;
  int attempts = 0;
  HKnot knot;
  std::optional<CylCurve> curve;  // present for the Legendrian family
  ProjectedDiagram diagram;
};

inline TrialKnot make_trial_knot(const SuiteConfig& cfg, int trial) {
  TrialKnot out;
  out.trial_seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(trial));
  SeededRng pick(mix_seed(out.trial_seed, 0x68));
  out.h_target = pick.next_int(cfg.h_min, cfg.h_max);
  for (int attempt = 0; attempt < cfg.max_regen; ++attempt) {
    FourierSpec spec;
    spec.degree = cfg.degree;
    spec.bound = cfg.bound;
    spec.h_target = out.h_target;
    spec.r_min = cfg.r_min;
    spec.samples = cfg.samples;
    spec.seed = mix_seed(out.trial_seed, 0x100 + static_cast<std::uint64_t>(attempt));
    try {
      if (cfg.family == Family::legendrian) {
        out.curve = generate_legendrian(spec);
        out.knot = to_hcoords(*out.curve);
      } else {
        out.knot = generate_generic(spec);
      }
      out.diagram = project_diagram(out.knot, cfg.dtol);
      if (cfg.family == Family::legendrian) (void)mu_oracle(*out.curve);
      out.attempts = attempt + 1;
      return out;
    } catch (const error& e) {
      if (e.code() == errc::non_generic || e.code() == errc::generation) continue;
      throw;
    }
  }
  throw error(errc::generation, "suite: trial " + std::to_string(trial) +
                                    " exhausted " + std::to_string(cfg.max_regen) +
                                    " regenerations (seed " +
                                    std::to_string(cfg.seed) + ")");
}

struct TrialRecord {
  int trial = 0;
  std::uint64_t trial_seed = 0;
  int attempts = 0;
  long long h = 0;
  long long r = 0;
  long long w = 0;
  long long beta = 0;
  long long chernov_m = 0;
  long long beta_oracle = 0;
  std::optional<long long> tb_oracle_value;
  std::optional<long long> mu_oracle_value;
  std::size_t n_doubles = 0;
  double max_residual = 0.0;
  bool theorem_main = false;   // beta_oracle == w + r h
  bool prop_l = false;         // m(I) + 2 beta_oracle == 0
  bool prop_w = false;         // m(I) + 2w + 2rh == 0
  bool contact_tb = true;      // tb_oracle == beta_oracle == w + r h
  bool contact_mu = true;      // mu_oracle == r + h

  bool ok() const { return theorem_main && prop_l && prop_w && contact_tb && contact_mu; }
};

inline TrialRecord verify_trial(const SuiteConfig& cfg, const TrialKnot& tk, int trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.trial_seed = tk.trial_seed;
  rec.attempts = tk.attempts;
  rec.n_doubles = tk.diagram.doubles.size();
  rec.h = homology_h(tk.knot, &rec.max_residual);
  rec.r = rotation_r(tk.knot, &rec.max_residual);
  rec.w = winding_w(tk.knot, tk.diagram, &rec.max_residual);
  rec.beta = rec.w + rec.r * rec.h;
  rec.chernov_m = m_map(chernov_I(tk.knot, tk.diagram, &rec.max_residual));
  rec.prop_w = rec.chernov_m + 2 * rec.w + 2 * rec.r * rec.h == 0;
  rec.beta_oracle = beta_oracle(tk.knot, 0.0, mix_seed(tk.trial_seed, 0xb)).value;
  rec.theorem_main = rec.beta_oracle == rec.beta;
  rec.prop_l = rec.chernov_m + 2 * rec.beta_oracle == 0;
  if (cfg.family == Family::legendrian) {
    const OracleResult to =
        tb_oracle(*tk.curve, 0.0, mix_seed(tk.trial_seed, 0x7), cfg.legendrian_tol);
    const TurningResult mo = mu_oracle(*tk.curve);
    detail::track_residual(&rec.max_residual, mo.residual);
    rec.tb_oracle_value = to.value;
    rec.mu_oracle_value = mo.turns;
    rec.contact_tb = to.value == rec.beta_oracle && to.value == rec.beta;
    rec.contact_mu = mo.turns == rec.r + rec.h;
  }
  return rec;
}

struct SuiteOutcome {
  std::vector<TrialRecord> records;
  int agreements = 0;
  double max_residual = 0.0;
  std::size_t total_doubles = 0;
  std::vector<int> failures;

  bool all_ok() const { return failures.empty(); }
};

inline SuiteOutcome run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  SuiteOutcome out;
  out.records.reserve(static_cast<std::size_t>(cfg.n_trials));
  for (int trial = 0; trial < cfg.n_trials; ++trial) {
    const TrialKnot tk = make_trial_knot(cfg, trial);
    TrialRecord rec = verify_trial(cfg, tk, trial);
    out.max_residual = std::max(out.max_residual, rec.max_residual);
    out.total_doubles += rec.n_doubles;
    if (rec.ok()) {
      ++out.agreements;
    } else {
      out.failures.push_back(trial);
      const std::string prefix = cfg.out_dir.empty() ? "" : cfg.out_dir + "/";
      const std::string path =
          prefix + "counterexample_trial" + std::to_string(trial) +
          (tk.curve ? ".cylcurve" : ".hknot");
      write_file(path, tk.curve ? write_cylcurve(*tk.curve) : write_hknot(tk.knot));
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

inline nlohmann::json suite_summary_json(const SuiteConfig& cfg, const SuiteOutcome& out) {
  nlohmann::json j;
  j["family"] = family_name(cfg.family);
  j["trials"] = cfg.n_trials;
  j["seed"] = cfg.seed;
  j["agreements"] = out.agreements;
  j["total_double_points"] = out.total_doubles;
  j["max_residual"] = out.max_residual;
  j["failures"] = out.failures;
  j["h_range"] = {cfg.h_min, cfg.h_max};
  j["samples"] = cfg.samples;
  return j;
}

// --- CLI command bodies -------------------------------------------------

struct CliOptions {
  bool with_oracles = false;
  bool legendrian = false;
  DiagramTolerances dtol{};
  double eps = 0.0;
  std::uint64_t seed = 1;
  double legendrian_tol = 1e-8;
};

inline int cmd_compute(const std::string& path, const CliOptions& opt,
                       std::ostream& out, std::ostream& err) {
  try {
    const auto curve = read_curve(slurp_file(path));
    ReportOptions ro;
    ro.with_oracles = opt.with_oracles;
    ro.legendrian = opt.legendrian;
    ro.dtol = opt.dtol;
    ro.eps = opt.eps;
    ro.seed = opt.seed;
    ro.legendrian_tol = opt.legendrian_tol;
    const InvariantReport rep =
        std::holds_alternative<CylCurve>(curve)
            ? full_report(std::get<CylCurve>(curve), ro)
            : full_report(std::get<HKnot>(curve), ro);
    out << report_to_json(rep).dump(2) << "\n";
    if (!rep.all_ok()) {
      err << nlohmann::json{{"error", "identity check failed"}, {"exit", 4}}.dump()
          << "\n";
      return 4;
    }
    return 0;
  } catch (const error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.code());
  }
}

inline int cmd_generate(Family family, const std::string& spec_path,
                        const std::string& out_path, std::ostream& err) {
  try {
    const nlohmann::json j = [&] {
      try {
        return nlohmann::json::parse(slurp_file(spec_path));
      } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse, std::string("fourier spec: ") + e.what());
      }
    }();
    const FourierSpec spec = fourier_spec_from_json(j);
    if (family == Family::legendrian) {
      write_file(out_path, write_cylcurve(generate_legendrian(spec)));
    } else {
      write_file(out_path, write_hknot(generate_generic(spec)));
    }
    return 0;
  } catch (const error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.code());
  }
}

inline int cmd_verify(const SuiteConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const SuiteOutcome outcome = run_suite(cfg);
    out << suite_summary_json(cfg, outcome).dump(2) << "\n";
    if (!outcome.all_ok()) {
      err << nlohmann::json{{"error", "suite disagreement"},
                            {"failures", outcome.failures},
                            {"exit", 4}}
                 .dump()
          << "\n";
      return 4;
    }
    return 0;
  } catch (const error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.code());
  }
}

inline int cmd_front(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const FrontDiagram f = parse_front(slurp_file(path));
    nlohmann::json j;
    j["tb"] = front_tb(f);
    j["mu"] = front_mu(f);
    j["cusps"] = f.cusps.size();
    j["writhe"] = front_writhe(f);
    out << j.dump(2) << "\n";
    return 0;
  } catch (const error& e) {
    err << error_json(e).dump() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace legcalc
