#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fixtures.hpp"
#include "legcalc/legcalc.hpp"

using namespace legcalc;
namespace fx = legcalc::testing;

namespace {

Polyline3 circle_xy(double radius, Vec3 center, int n = 64) {
  Polyline3 p;
  for (int i = 0; i < n; ++i) {
    const double a = kTwoPi * i / n;
    p.vertices.push_back(center + Vec3{radius * std::cos(a), radius * std::sin(a), 0.0});
  }
  return p;
}

// circle in the u-z plane through (and around) the given center
Polyline3 circle_uz(double radius, Vec3 center, int n = 64) {
  Polyline3 p;
  for (int i = 0; i < n; ++i) {
    const double a = kTwoPi * i / n;
    p.vertices.push_back(center + Vec3{radius * std::cos(a), 0.0, radius * std::sin(a)});
  }
  return p;
}

}  // namespace

TEST(TurningNumber, Triangles) {
  const std::vector<Vec2> ccw = {{0, 0}, {1, 0}, {0, 1}};
  const std::vector<Vec2> cw = {{0, 0}, {0, 1}, {1, 0}};
  EXPECT_EQ(turning_number(ccw).turns, 1);
  EXPECT_EQ(turning_number(cw).turns, -1);
}

TEST(TurningNumber, LemniscateIsZero) {
  std::vector<Vec2> pts;
  for (int i = 0; i < 256; ++i) {
    const double a = kTwoPi * i / 256 + 0.4;
    pts.push_back({std::sin(2 * a), 2.0 + std::sin(a)});
  }
  const TurningResult t = turning_number(pts);
  EXPECT_EQ(t.turns, 0);
  EXPECT_LT(t.residual, 1e-9);
}

TEST(TurningNumber, ReversalRejected) {
  const std::vector<Vec2> spike = {{0, 0}, {2, 0}, {1, 0.0}, {1, 2}};
  try {
    turning_number(spike);
    FAIL() << "expected reversal error";
  } catch (const error& e) {
    EXPECT_EQ(e.kind(), degeneracy::reversal);
  }
}

TEST(Linking, SplitLinkIsZero) {
  const Polyline3 a = circle_xy(1.0, {0, 0, 0});
  const Polyline3 b = circle_xy(1.0, {10, 0, 0});
  EXPECT_EQ(linking_number(a, b).lk, 0);
}

TEST(Linking, HopfPairSignFixedByConvention) {
  // unit circle in the uv-plane and a unit circle in the uz-plane through
  // its rim point (1,0,0): linked once; with both traversals as sampled
  // counterclockwise in their planes, the right-handed crossing convention
  // gives lk = -1 (the hand count over the two crossings of the (z,u)
  // projection: each has det[T_over, T_under] < 0).
  const Polyline3 a = circle_xy(1.0, {0, 0, 0});
  const Polyline3 b = circle_uz(1.0, {1, 0, 0});
  const LinkingResult lk = linking_number(a, b);
  EXPECT_EQ(lk.lk, -1);
  // reversing one component negates the linking number
  Polyline3 br = b;
  std::reverse(br.vertices.begin(), br.vertices.end());
  EXPECT_EQ(linking_number(a, br).lk, 1);
}

TEST(Linking, Symmetric) {
  const Polyline3 a = circle_xy(1.0, {0, 0, 0});
  const Polyline3 b = circle_uz(1.0, {1, 0, 0});
  EXPECT_EQ(linking_number(a, b).lk, linking_number(b, a).lk);
  // and deterministic for a fixed seed
  EXPECT_EQ(linking_number(a, b).lk, linking_number(a, b).lk);
}

TEST(Linking, RefusesTouchingComponents) {
  const Polyline3 a = circle_xy(1.0, {0, 0, 0});
  LinkingOptions opt;
  opt.min_separation = 1e-3;
  const Polyline3 near = circle_xy(1.0, {0, 0, 1e-6});
  EXPECT_THROW(linking_number(a, near, opt), error);
}

TEST(BetaOracle, CircleIsUnlinkedFromPushoff) {
  EXPECT_EQ(beta_oracle(to_hcoords(fx::circle_cyl())).value, 0);
}

TEST(BetaOracle, TorusCurveIsMinusOne) {
  EXPECT_EQ(beta_oracle(to_hcoords(fx::torus_cyl())).value, -1);
}

TEST(BetaOracle, StableAcrossSeedsAndEps) {
  const HKnot k = fx::figure8_hknot(+1);
  const OracleResult a = beta_oracle(k, 0.0, 1);
  const OracleResult b = beta_oracle(k, 0.0, 999);
  EXPECT_EQ(a.value, b.value);
  const OracleResult c = beta_oracle(k, a.eps * 0.25, 5);
  EXPECT_EQ(a.value, c.value);
  EXPECT_EQ(a.value, -1);
}

TEST(TbOracle, RefusesNonLegendrian) {
  EXPECT_THROW(tb_oracle(fx::circle_cyl()), error);
}

TEST(TbOracle, AgreesWithBetaOracleOnLegendrianCurves) {
  for (std::uint64_t seed : {81u, 82u, 83u}) {
    FourierSpec spec;
    spec.seed = seed;
    spec.h_target = static_cast<int>(seed % 4) - 2;
    const CylCurve c = generate_legendrian(spec);
    const long long tb = tb_oracle(c).value;
    EXPECT_EQ(tb, beta_oracle(to_hcoords(c)).value) << "seed " << seed;
  }
}

TEST(MuOracle, TurningOfUvProjection) {
  // the torus-style curve winds once counterclockwise around the z-axis
  EXPECT_EQ(mu_oracle(fx::torus_cyl()).turns, 1);
}

TEST(MuOracle, MatchesRPlusHAndNegatesUnderReversal) {
  for (std::uint64_t seed : {91u, 92u}) {
    FourierSpec spec;
    spec.seed = seed;
    spec.h_target = static_cast<int>(seed % 3);
    const CylCurve c = generate_legendrian(spec);
    const HKnot k = to_hcoords(c);
    const long long mu = mu_oracle(c).turns;
    EXPECT_EQ(mu, rotation_r(k) + homology_h(k)) << "seed " << seed;
    EXPECT_EQ(mu_oracle(reversed(c)).turns, -mu);
  }
}
