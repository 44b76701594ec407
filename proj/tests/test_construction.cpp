#include <gtest/gtest.h>

#include <random>
#include <set>

#include "disperse/construction.hpp"
#include "disperse/good_boxes.hpp"
#include "disperse/oracle.hpp"
#include "test_support.hpp"

using namespace disperse;
using disperse::testing::pointset_equal_for_test;
using disperse::testing::q;

TEST(RadixWindows, MergesOverlappingWindows) {
  auto params = ConstructionParams::desk(2);
  PointSet P = radix_windows({0, 3, 100}, 5, params);
  EXPECT_EQ(P.size(), 13u);
  EXPECT_EQ(P.exact_point(0)[0], 0);
}

TEST(Stage1, SizeBoundAndDeterminism) {
  auto params = ConstructionParams::desk(2);
  const std::uint64_t n = 432;
  Stage1Result a = stage1(n, params, 9), b = stage1(n, params, 9);
  EXPECT_EQ(a.anchors, b.anchors);
  EXPECT_EQ(a.anchors.size(), params.sample_count());
  EXPECT_LE(a.points.size(), a.anchors.size() * (n / params.gamma_pow_u64(params.e_W)));
  EXPECT_EQ(pointset_equal_for_test(a.points, b.points), true);
  for (auto x : a.anchors) EXPECT_LT(x, n * params.gamma_pow_u64(params.e_X));
  EXPECT_THROW(stage1(433, params, 1), PreconditionError);
}

TEST(Stage1, VerifiedOutputMeetsEveryGoodBox) {
  auto params = ConstructionParams::desk(2);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Stage1Options opt;
    opt.verify = true;
    Stage1Result r = stage1(432, params, seed, opt);
    EXPECT_TRUE(r.verified);
    EXPECT_TRUE(meets_all_good_boxes(r.points, 432, params).all_met);
  }
}

TEST(Stage1, ResampleBudgetReportsTheMissedPair) {
  auto params = ConstructionParams::desk(2);
  params.sample_multiplier = 0.5;
  Stage1Options opt;
  opt.verify = true;
  opt.max_attempts = 2;
  try {
    stage1(432, params, 1, opt);
    FAIL();
  } catch (const ResourceLimit& e) {
    EXPECT_NE(std::string(e.what()).find("axis0(a="), std::string::npos);
  }
}

TEST(Stage2, ShiftsAndScaling) {
  auto params = ConstructionParams::desk(2);
  // (1/2, 1/3) is the lower corner of prod [1/p, 1]; it maps to the origin.
  PointSet P = disperse::testing::pts({{q(1, 2), q(1, 3)}});
  PointSet S = stage2(P, params);
  std::set<std::vector<Rational>> got;
  for (std::size_t i = 0; i < S.size(); ++i) got.insert({S.exact_point(i).begin(), S.exact_point(i).end()});
  // Shifts 2r v with v = (1/2, 1/6): r = 0 -> (1/2,1/3), r = 1 -> (3/2, ...) leaves the cube.
  EXPECT_EQ(got, (std::set<std::vector<Rational>>{{0, 0}}));
  EXPECT_EQ(stage2_guarantee(432, params), q(1, 144));
}

TEST(Stage2, OutputStaysInTheCubeAndGrowsAtMostDPlusOneFold) {
  auto params = ConstructionParams::desk(2);
  Stage1Result s1 = stage1(432, params, 4);
  PointSet S = stage2(s1.points, params);
  EXPECT_LE(S.size(), 3 * s1.points.size());
  for (const auto& x : S.exact_coords()) {
    EXPECT_GE(x, 0);
    EXPECT_LE(x, 1);
  }
}

TEST(HhModified, DeskEndToEnd) {
  auto params = ConstructionParams::desk(2);
  Stage1Options opt;
  opt.verify = true;
  Construction c = hh_modified(500, params, 7, opt);
  EXPECT_EQ(c.n_construction, 432u);
  EXPECT_TRUE(c.verified);
  auto m = largest_empty_box<Rational>(c.points);
  EXPECT_LE(m.volume, c.guarantee);
  EXPECT_LE(m.volume, q(2, 432));
  EXPECT_THROW(hh_modified(100, params, 1), PreconditionError);
}

TEST(HhModified, OneDimensionalPrimeFive) {
  ConstructionParams params = ConstructionParams::desk(1);
  params.primes = {5};
  params.preset = Preset::custom;
  ASSERT_TRUE(params.translate_claim_valid());
  Stage1Options opt;
  opt.verify = true;
  for (std::uint64_t seed : {1u, 2u}) {
    Construction c = hh_modified(250, params, seed, opt);
    EXPECT_LE(largest_empty_box<Rational>(c.points).volume, c.guarantee);
    EXPECT_LE(c.guarantee, q(2, 250));
  }
}

TEST(SimpleSets, GridHaltonRandom) {
  PointSet g = grid_points(2, 2);
  EXPECT_EQ(g.size(), 4u);
  EXPECT_EQ(largest_empty_box<Rational>(g).volume, q(1, 2));
  PointSet h = halton_points(4, 2);
  EXPECT_EQ(h.exact_point(3)[0], q(3, 4));
  EXPECT_EQ(h.exact_point(3)[1], q(1, 9));
  PointSet r1 = random_points(10, 3, 5), r2 = random_points(10, 3, 5);
  EXPECT_TRUE(pointset_equal_for_test(r1, r2));
  EXPECT_THROW(random_points(10, 0, 5), Error);
}
