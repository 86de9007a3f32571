#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "legcalc/legcalc.hpp"

using namespace legcalc;
namespace fx = legcalc::testing;

namespace {

std::string fixture_path(const std::string& name) {
  return std::string(LEGCALC_FIXTURE_DIR) + "/" + name;
}

std::string golden(const std::string& name) {
  return slurp_file(std::string(LEGCALC_GOLDEN_DIR) + "/" + name);
}

std::string temp_path(const std::string& name) {
  return ::testing::TempDir() + "/" + name;
}

}  // namespace

TEST(CurveFiles, RoundTripIsByteStable) {
  const CylCurve c = fx::torus_cyl(128);
  const std::string text = write_cylcurve(c);
  const CylCurve back = read_cylcurve(text);
  EXPECT_EQ(write_cylcurve(back), text);

  const HKnot k = fx::figure8_hknot(+1, 128);
  const std::string ktext = write_hknot(k);
  EXPECT_EQ(write_hknot(read_hknot(ktext)), ktext);

  const auto sniffed = read_curve(text);
  EXPECT_TRUE(std::holds_alternative<CylCurve>(sniffed));
}

TEST(CurveFiles, ParseErrorsNameTheLine) {
  try {
    read_cylcurve("cylcurve v1 n=3\n0 1 2 0\n0.25 1 2a 0\n0.5 1 2 0\n");
    FAIL() << "expected parse error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(read_cylcurve("hknot v1 n=4\n"), error);
  EXPECT_THROW(read_curve("nonsense v1 n=1\n1 2 3 4\n"), error);
}

TEST(DiagramDump, FigureEightGolden) {
  const ProjectedDiagram d = project_diagram(fx::figure8_hknot(+1));
  EXPECT_EQ(dump_diagram(d), golden("figure8.diagram"));
}

TEST(Reports, GoldenFiles) {
  ReportOptions opts;
  opts.with_oracles = true;
  {
    const InvariantReport rep = full_report(to_hcoords(fx::circle_cyl()), opts);
    EXPECT_EQ(report_to_json(rep).dump(2) + "\n", golden("circle.report.json"));
  }
  {
    const InvariantReport rep = full_report(fx::figure8_hknot(+1), opts);
    EXPECT_EQ(report_to_json(rep).dump(2) + "\n", golden("figure8.report.json"));
  }
  {
    ReportOptions lopts = opts;
    lopts.legendrian = true;
    FourierSpec spec;
    spec.seed = 2024;
    spec.h_target = 1;
    const InvariantReport rep = full_report(generate_legendrian(spec), lopts);
    EXPECT_EQ(report_to_json(rep).dump(2) + "\n", golden("legendrian.report.json"));
  }
}

TEST(Commands, ComputeOnFixtures) {
  const std::string path = temp_path("circle.cylcurve");
  write_file(path, write_cylcurve(fx::circle_cyl()));
  CliOptions opt;
  opt.with_oracles = true;
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_compute(path, opt, out, err), 0) << err.str();
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("h").get<long long>(), 0);
  EXPECT_EQ(j.at("w").get<long long>(), 0);
  EXPECT_EQ(j.at("beta").get<long long>(), 0);
  EXPECT_EQ(j.at("oracles").at("beta").get<long long>(), 0);

  const std::string kpath = temp_path("figure8.hknot");
  write_file(kpath, write_hknot(fx::figure8_hknot(+1)));
  std::ostringstream out2;
  ASSERT_EQ(cmd_compute(kpath, opt, out2, err), 0) << err.str();
  const auto j2 = nlohmann::json::parse(out2.str());
  EXPECT_EQ(j2.at("beta").get<long long>(), -1);
  ASSERT_EQ(j2.at("weights").size(), 1u);
  EXPECT_EQ(j2.at("weights")[0].at("w_d").get<long long>(), -1);
}

TEST(Commands, ComputeExitCodes) {
  const std::string bad = temp_path("bad.cylcurve");
  write_file(bad, "cylcurve v1 n=2\n0 1 2 0\n");
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_compute(bad, CliOptions{}, out, err), 2);
  const auto ej = nlohmann::json::parse(err.str());
  EXPECT_EQ(ej.at("exit").get<int>(), 2);

  // non-generic: a projected fiber excursion (coincident projected points)
  HKnot k = fx::figure8_hknot(+1, 64);
  k.points[10].x = k.points[9].x;
  k.points[10].y = k.points[9].y;
  std::string text = "hknot v1 n=64\n";
  for (const auto& p : k.points) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g %.17g\n", p.t, p.x, p.y, p.theta);
    text += buf;
  }
  const std::string ng = temp_path("nongeneric.hknot");
  write_file(ng, text);
  std::ostringstream out2;
  std::ostringstream err2;
  EXPECT_EQ(cmd_compute(ng, CliOptions{}, out2, err2), 3);
}

TEST(Commands, GenerateIsDeterministicAndSeedsDiffer) {
  CliOptions opt;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const std::string spec_path = temp_path("spec" + std::to_string(seed) + ".json");
    write_file(spec_path, nlohmann::json{{"degree", 3},
                                         {"bound", 0.25},
                                         {"h_target", 1},
                                         {"r_min", 0.25},
                                         {"seed", seed}}
                              .dump());
    const std::string out1 = temp_path("gen_a" + std::to_string(seed) + ".cylcurve");
    const std::string out2 = temp_path("gen_b" + std::to_string(seed) + ".cylcurve");
    std::ostringstream err;
    ASSERT_EQ(cmd_generate(Family::legendrian, spec_path, out1, err), 0) << err.str();
    ASSERT_EQ(cmd_generate(Family::legendrian, spec_path, out2, err), 0);
    EXPECT_EQ(slurp_file(out1), slurp_file(out2));  // byte-identical rerun
  }
  EXPECT_NE(slurp_file(temp_path("gen_a1.cylcurve")), slurp_file(temp_path("gen_a2.cylcurve")));
  EXPECT_NE(slurp_file(temp_path("gen_a2.cylcurve")), slurp_file(temp_path("gen_a3.cylcurve")));
}

TEST(Commands, VerifySmallSuites) {
  SuiteConfig cfg;
  cfg.n_trials = 5;
  cfg.seed = 77;
  cfg.family = Family::generic;
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_verify(cfg, out, err), 0) << err.str();
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("agreements").get<int>(), 5);
  EXPECT_EQ(j.at("family").get<std::string>(), "generic");

  cfg.family = Family::legendrian;
  cfg.n_trials = 3;
  std::ostringstream out2;
  ASSERT_EQ(cmd_verify(cfg, out2, err), 0) << err.str();
  EXPECT_EQ(nlohmann::json::parse(out2.str()).at("agreements").get<int>(), 3);

  // n=1 with a fixed seed: stable summary
  cfg.family = Family::generic;
  cfg.n_trials = 1;
  std::ostringstream a;
  std::ostringstream b;
  ASSERT_EQ(cmd_verify(cfg, a, err), 0);
  ASSERT_EQ(cmd_verify(cfg, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Commands, FrontFixtures) {
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_front(fixture_path("trefoil.front"), out, err), 0) << err.str();
  auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("tb").get<long long>(), 1);
  EXPECT_EQ(j.at("mu").get<long long>(), 0);

  std::ostringstream out2;
  ASSERT_EQ(cmd_front(fixture_path("unknot.front"), out2, err), 0);
  j = nlohmann::json::parse(out2.str());
  EXPECT_EQ(j.at("tb").get<long long>(), -1);
  EXPECT_EQ(j.at("mu").get<long long>(), 0);

  const std::string bad = temp_path("bad.front");
  write_file(bad, "front v1\ncusp up 0 0\n");
  std::ostringstream out3;
  std::ostringstream err3;
  EXPECT_EQ(cmd_front(bad, out3, err3), 2);
}

// end-to-end runs of the installed binary (exit codes + stdout stability)
TEST(CliBinary, SubprocessSmoke) {
  const std::string report = temp_path("cli_report.json");
  const std::string cmd = std::string(LEGCALC_CLI_PATH) + " front " +
                          fixture_path("trefoil.front") + " > " + report;
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  const auto j = nlohmann::json::parse(slurp_file(report));
  EXPECT_EQ(j.at("tb").get<long long>(), 1);

  const std::string bad_cmd = std::string(LEGCALC_CLI_PATH) + " compute /nonexistent 2>" +
                              temp_path("cli_err.json") + " >/dev/null";
  const int rc = std::system(bad_cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(rc), 2);
}

TEST(CliBinary, SeedEnvFallback) {
  const std::string out1 = temp_path("env_seed1.json");
  const std::string cmd1 = "LEGCALC_SEED=4242 " + std::string(LEGCALC_CLI_PATH) +
                           " verify --trials 1 --family generic > " + out1;
  ASSERT_EQ(std::system(cmd1.c_str()), 0);
  const auto j1 = nlohmann::json::parse(slurp_file(out1));
  EXPECT_EQ(j1.at("seed").get<std::uint64_t>(), 4242u);

  const std::string out2 = temp_path("env_seed2.json");
  const std::string cmd2 = "LEGCALC_SEED=4242 " + std::string(LEGCALC_CLI_PATH) +
                           " --seed 7 verify --trials 1 --family generic > " + out2;
  ASSERT_EQ(std::system(cmd2.c_str()), 0);
  EXPECT_EQ(nlohmann::json::parse(slurp_file(out2)).at("seed").get<std::uint64_t>(), 7u);
}
