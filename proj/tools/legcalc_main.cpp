#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "legcalc/legcalc.hpp"

namespace {

std::uint64_t master_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("LEGCALC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << R"({"error":"LEGCALC_SEED is not an integer","exit":2})" << "\n";
      std::exit(2);
    }
  }
  return seed_flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"invariants of knots in H^2 x S^1 and of Legendrian knots in "
               "(R^3 minus the z-axis, ker(dz + r^2 dphi))"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  double angle_tol = legcalc::DiagramTolerances{}.angle_tol;
  double sep_tol = legcalc::DiagramTolerances{}.sep_tol;
  double eps = 0.0;
  auto* seed_opt = app.add_option("--seed", seed, "master seed (fallback: LEGCALC_SEED)");
  app.add_option("--angle-tol", angle_tol, "double-point transversality tolerance (|sin|)");
  app.add_option("--sep-tol", sep_tol, "minimum double-point separation");
  app.add_option("--eps", eps, "pushoff size for the linking oracles (0 = auto)");

  auto* compute = app.add_subcommand("compute", "invariants of a curve file (JSON report)");
  std::string compute_path;
  bool with_oracles = false;
  bool legendrian = false;
  compute->add_option("path", compute_path, "cylcurve/hknot v1 file")->required();
  compute->add_flag("--oracles", with_oracles, "also run the linking/turning oracles");
  compute->add_flag("--legendrian", legendrian, "treat input as Legendrian; adds tb and mu");

  auto* generate = app.add_subcommand("generate", "write a deterministic random curve file");
  std::string spec_path;
  std::string out_path;
  std::string gen_family = "legendrian";
  generate->add_option("spec", spec_path, "JSON spec {degree,bound,h_target,r_min,seed}")
      ->required();
  generate->add_option("--out", out_path, "output file")->required();
  generate->add_option("--family", gen_family, "legendrian | generic")
      ->check(CLI::IsMember({"legendrian", "generic"}));

  auto* verify = app.add_subcommand("verify", "random-suite check of the invariant identities");
  int trials = 100;
  std::string verify_family = "generic";
  std::string out_dir;
  verify->add_option("--trials", trials, "number of random knots");
  verify->add_option("--family", verify_family, "legendrian | generic")
      ->check(CLI::IsMember({"legendrian", "generic"}));
  verify->add_option("--out", out_dir, "directory for counterexample files");

  auto* front = app.add_subcommand("front", "evaluate a front v1 diagram (tb, mu)");
  std::string front_path;
  front->add_option("path", front_path, "front v1 file")->required();

  CLI11_PARSE(app, argc, argv);
  const std::uint64_t the_seed = master_seed(seed_opt, seed);

  if (compute->parsed()) {
    legcalc::CliOptions opt;
    opt.with_oracles = with_oracles;
    opt.legendrian = legendrian;
    opt.dtol.angle_tol = angle_tol;
    opt.dtol.sep_tol = sep_tol;
    opt.eps = eps;
    opt.seed = the_seed;
    return legcalc::cmd_compute(compute_path, opt, std::cout, std::cerr);
  }
  if (generate->parsed()) {
    const auto family = gen_family == "legendrian" ? legcalc::Family::legendrian
                                                   : legcalc::Family::generic;
    return legcalc::cmd_generate(family, spec_path, out_path, std::cerr);
  }
  if (verify->parsed()) {
    legcalc::SuiteConfig cfg;
    cfg.n_trials = trials;
    cfg.seed = the_seed;
    cfg.family = verify_family == "legendrian" ? legcalc::Family::legendrian
                                               : legcalc::Family::generic;
    cfg.dtol.angle_tol = angle_tol;
    cfg.dtol.sep_tol = sep_tol;
    cfg.out_dir = out_dir;
    return legcalc::cmd_verify(cfg, std::cout, std::cerr);
  }
  return legcalc::cmd_front(front_path, std::cout, std::cerr);
}
