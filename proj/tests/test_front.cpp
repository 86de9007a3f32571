#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "legcalc/front.hpp"
#include "legcalc/io.hpp"

using namespace legcalc;

namespace {

std::string fixture(const std::string& name) {
  return slurp_file(std::string(LEGCALC_FIXTURE_DIR) + "/" + name);
}

// stabilized unknot drawn with both cusps up: exactly one crossing, and the
// slope rule plus the right-handed convention make it negative
const char* kOneCrossing = R"(front v1
cusp up -3 0
-1 0.8
1.5 2.2
cusp up 3 2.5
1 3.2
-2 -0.8
)";

}  // namespace

TEST(ParseFront, UnknotFixture) {
  const FrontDiagram f = parse_front(fixture("unknot.front"));
  EXPECT_EQ(f.cusps.size(), 2u);
  EXPECT_TRUE(front_crossing_signs(f).empty());
  EXPECT_EQ(front_tb(f), -1);
  EXPECT_EQ(front_mu(f), 0);
}

TEST(ParseFront, TrefoilFixture) {
  const FrontDiagram f = parse_front(fixture("trefoil.front"));
  EXPECT_EQ(f.cusps.size(), 4u);
  const auto crossings = front_crossing_signs(f);
  ASSERT_EQ(crossings.size(), 3u);
  long long writhe = 0;
  for (const auto& c : crossings) {
    EXPECT_EQ(c.sign, crossings[0].sign);  // all three crossings equal sign
    writhe += c.sign;
  }
  EXPECT_EQ(writhe, 3);
  EXPECT_EQ(front_tb(f), 1);
  EXPECT_EQ(front_mu(f), 0);
}

TEST(ParseFront, ErrorsCarryLineNumbers) {
  // vertical segment between the two vertices on line 3-4
  const char* vertical = "front v1\ncusp up -2 0\n-1 1\n-1 2\ncusp down 2 0\n1 -1\n";
  try {
    parse_front(vertical);
    FAIL() << "expected vertical-segment error";
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::parse);
    EXPECT_NE(std::string(e.what()).find("vertical"), std::string::npos);
  }

  const char* odd = "front v1\ncusp up -2 0\n0 1.5\n";
  try {
    parse_front(odd);
    FAIL() << "expected odd cusp count";
  } catch (const error& e) {
    EXPECT_NE(std::string(e.what()).find("odd cusp count"), std::string::npos);
  }

  const char* malformed = "front v1\ncusp up -2 0\n0 abc\n";
  try {
    parse_front(malformed);
    FAIL() << "expected malformed line";
  } catch (const error& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }

  const char* bad_marker = "front v1\ncusp sideways -2 0\n0 1\n";
  EXPECT_THROW(parse_front(bad_marker), error);

  // marker direction contradicting the geometry
  const char* wrong_dir =
      "front v1\ncusp down -2 0\n-1 1.2\n0 1.5\n1 1.2\ncusp down 2 0\n1 -1.2\n0 "
      "-1.5\n-1 -1.2\n";
  try {
    parse_front(wrong_dir);
    FAIL() << "expected marker mismatch";
  } catch (const error& e) {
    EXPECT_NE(std::string(e.what()).find("marked"), std::string::npos);
  }
}

TEST(FrontCrossings, SingleCrossingSignAndMirror) {
  const FrontDiagram f = parse_front(kOneCrossing);
  const auto crossings = front_crossing_signs(f);
  ASSERT_EQ(crossings.size(), 1u);
  EXPECT_EQ(crossings[0].sign, -1);
  EXPECT_EQ(front_tb(f), -2);  // once-stabilized unknot
  EXPECT_EQ(front_mu(f), -1);
  const auto mirrored_crossings = front_crossing_signs(mirrored(f));
  ASSERT_EQ(mirrored_crossings.size(), 1u);
  EXPECT_EQ(mirrored_crossings[0].sign, 1);
}

TEST(FrontFormulas, MirrorNegatesWritheKeepsCusps) {
  const FrontDiagram f = parse_front(fixture("trefoil.front"));
  const FrontDiagram m = mirrored(f);
  EXPECT_EQ(front_writhe(m), -front_writhe(f));
  EXPECT_EQ(m.cusps.size(), f.cusps.size());
  EXPECT_EQ(front_tb(m), -front_writhe(f) - 2);
}

TEST(FrontFormulas, ReversalKeepsTbNegatesMu) {
  for (const char* name : {"trefoil.front", "unknot.front"}) {
    const FrontDiagram f = parse_front(fixture(name));
    const FrontDiagram r = reversed(f);
    EXPECT_EQ(front_tb(r), front_tb(f)) << name;
    EXPECT_EQ(front_mu(r), -front_mu(f)) << name;
  }
  const FrontDiagram f = parse_front(kOneCrossing);  // mu = -1, not symmetric
  EXPECT_EQ(front_mu(reversed(f)), 1);
  EXPECT_EQ(front_tb(reversed(f)), -2);
}

namespace {

// unknot with one zigzag stabilization spliced into the bottom strand:
// two extra downward cusps, no extra crossing
const char* kStabilizedUnknot = R"(front v1
cusp up -2 0
-1 1.2
0 1.5
1 1.2
cusp down 2 0
1.5 -0.5
cusp down 0.5 -0.7
1.2 -0.9
cusp down 1.3 -1.0
0 -1.3
-1 -1.1
)";

}  // namespace

TEST(FrontFormulas, StabilizationDropsTbByOne) {
  const FrontDiagram base = parse_front(fixture("unknot.front"));
  const FrontDiagram stab = parse_front(kStabilizedUnknot);
  EXPECT_EQ(stab.cusps.size(), base.cusps.size() + 2);
  EXPECT_TRUE(front_crossing_signs(stab).empty());
  EXPECT_EQ(front_tb(stab), front_tb(base) - 1);
  EXPECT_EQ(front_mu(stab), front_mu(base) + 1);
  EXPECT_EQ(front_mu(reversed(stab)), -1);
}

TEST(Lagrangian, EmbeddedCurveArithmetic) {
  LagrangianDiagram d;
  for (int i = 0; i < 64; ++i) {
    const double a = kTwoPi * i / 64;
    d.vertices.push_back({std::cos(a), std::sin(a)});
  }
  EXPECT_EQ(lagrangian_tb(d), 0);
  EXPECT_EQ(lagrangian_mu(d), 1);
  std::reverse(d.vertices.begin(), d.vertices.end());
  EXPECT_EQ(lagrangian_mu(d), -1);
}

namespace {

// figure-eight shaped xy-projection of the standard unknot: one crossing,
// turning number 0; choosing the over strand fixes the writhe sign
LagrangianDiagram lemniscate_diagram(bool first_over) {
  LagrangianDiagram d;
  const int n = 128;
  std::size_t seg_a = 0;
  std::size_t seg_b = 0;
  for (int i = 0; i < n; ++i) {
    const double a = kTwoPi * i / n + 0.4;
    d.vertices.push_back({std::sin(2 * a), 2.0 + std::sin(a)});
  }
  // locate the two segments through the double point (0, 2): they bracket
  // the parameters where a = 0 mod pi
  for (int i = 0; i < n; ++i) {
    const double a0 = kTwoPi * i / n + 0.4;
    const double a1 = kTwoPi * (i + 1) / n + 0.4;
    if (std::floor(a0 / kPi) != std::floor(a1 / kPi)) {
      if (seg_a == 0)
        seg_a = static_cast<std::size_t>(i);
      else
        seg_b = static_cast<std::size_t>(i);
    }
  }
  d.crossings.push_back({seg_a, seg_b, first_over});
  return d;
}

}  // namespace

TEST(Lagrangian, KinkAndUnknotConsistency) {
  // the earlier-parameter strand has tangent with det[T_a, T_b] < 0, so
  // making it the over strand gives writhe -1: the standard unknot, which
  // matches its front encoding (tb, mu) = (-1, 0)
  const LagrangianDiagram unknot = lemniscate_diagram(true);
  EXPECT_EQ(lagrangian_tb(unknot), -1);
  EXPECT_EQ(lagrangian_mu(unknot), 0);
  const FrontDiagram front_unknot = parse_front(fixture("unknot.front"));
  EXPECT_EQ(lagrangian_tb(unknot), front_tb(front_unknot));
  EXPECT_EQ(lagrangian_mu(unknot), front_mu(front_unknot));

  // flipping the over strand makes the kink positive: tb = +1
  const LagrangianDiagram kink = lemniscate_diagram(false);
  EXPECT_EQ(lagrangian_tb(kink), 1);
  EXPECT_EQ(lagrangian_mu(kink), 0);
}

TEST(Lagrangian, CrossingBookkeepingValidated) {
  LagrangianDiagram d = lemniscate_diagram(true);
  d.crossings.clear();
  EXPECT_THROW(lagrangian_tb(d), error);  // geometric crossing without data
  d = lemniscate_diagram(true);
  d.crossings.push_back({1, 50, true});
  EXPECT_THROW(lagrangian_tb(d), error);  // data without a geometric crossing
}
