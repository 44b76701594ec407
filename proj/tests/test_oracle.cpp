#include <gtest/gtest.h>

#include <random>

#include "disperse/oracle.hpp"
#include "test_support.hpp"

using namespace disperse;
using disperse::testing::brute_force_dispersion;
using disperse::testing::brute_force_toroidal_dispersion;
using disperse::testing::pts;
using disperse::testing::q;
using disperse::testing::random_grid_set;

namespace {

OracleOptions with(OracleOptions::Method m) {
  OracleOptions o;
  o.method = m;
  return o;
}

const OracleOptions::Method kMethods2d[] = {OracleOptions::Method::branch_and_bound,
                                            OracleOptions::Method::plane_sweep};

}  // namespace

TEST(LargestEmptyBox, EmptySetIsWholeCube) {
  auto r = largest_empty_box<Rational>(PointSet::empty(2));
  EXPECT_EQ(r.volume, 1);
  EXPECT_EQ(r.witness, ExactBox::unit(2));
}

TEST(LargestEmptyBox, CentrePoint) {
  PointSet P = pts({{q(1, 2), q(1, 2)}});
  for (auto m : kMethods2d) EXPECT_EQ(largest_empty_box<Rational>(P, with(m)).volume, q(1, 2));
}

TEST(LargestEmptyBox, MidpointGrid) {
  PointSet P = pts({{q(1, 4), q(1, 4)}, {q(1, 4), q(3, 4)}, {q(3, 4), q(1, 4)}, {q(3, 4), q(3, 4)}});
  for (auto m : kMethods2d) {
    auto r = largest_empty_box<Rational>(P, with(m));
    EXPECT_EQ(r.volume, q(1, 2));
    ExactBox expect{{{q(1, 4), q(3, 4), Openness::open}, {Rational(0), Rational(1), Openness::open}}};
    EXPECT_EQ(r.witness, expect);
    EXPECT_DOUBLE_EQ(r.scaled, 2.0);
  }
}

TEST(LargestEmptyBox, RejectsTorusAndZeroDimension) {
  PointSet T = pts({{q(1, 2)}}).with_space(Space::torus);
  EXPECT_THROW(largest_empty_box<Rational>(T), PreconditionError);
  EXPECT_THROW(largest_empty_box<Rational>(PointSet::empty(0)), PreconditionError);
}

TEST(LargestEmptyBox, NodeBudgetIsEnforced) {
  std::mt19937_64 rng(3);
  PointSet P = random_grid_set(30, 3, 1000, rng);
  OracleOptions o;
  o.node_budget = 10;
  EXPECT_THROW(largest_empty_box<Rational>(P, o), ResourceLimit);
}

TEST(LargestEmptyBox, MatchesUnprunedEnumerationIn2d) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    PointSet P = random_grid_set(10, 2, 97, rng);
    const Rational expect = brute_force_dispersion(P);
    for (auto m : kMethods2d) ASSERT_EQ(largest_empty_box<Rational>(P, with(m)).volume, expect) << trial;
  }
}

TEST(LargestEmptyBox, MatchesUnprunedEnumerationIn1dAnd3d) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet P1 = random_grid_set(12, 1, 50, rng);
    ASSERT_EQ(largest_empty_box<Rational>(P1).volume, brute_force_dispersion(P1));
    PointSet P3 = random_grid_set(5, 3, 13, rng);
    ASSERT_EQ(largest_empty_box<Rational>(P3).volume, brute_force_dispersion(P3));
  }
}

TEST(LargestEmptyBox, DuplicatesAndBoundaryPoints) {
  PointSet P = pts({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}, {q(1, 2), q(1, 2)},
                                     {q(1, 2), q(1, 2)}});
  for (auto m : kMethods2d) EXPECT_EQ(largest_empty_box<Rational>(P, with(m)).volume, brute_force_dispersion(P));
}

TEST(LargestEmptyBox, FloatPathAgreesWithExact) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    PointSet P = random_grid_set(15, 2 + trial % 2, 1 << 20, rng);
    EXPECT_NEAR(largest_empty_box<double>(P).volume, to_double(largest_empty_box<Rational>(P).volume), 1e-12);
  }
}

TEST(LargestEmptyBox, PropertiesOnRandomSets) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = 1 + trial % 3, n = 1 + trial % 20;
    PointSet P = random_grid_set(n, d, 1 << 16, rng);
    auto r = largest_empty_box<Rational>(P);
    EXPECT_TRUE(box_is_empty(r.witness, P));
    EXPECT_TRUE(inside_unit_cube(r.witness));
    EXPECT_EQ(r.volume, box_volume(r.witness));
    EXPECT_GE(r.volume, q(1, static_cast<long long>(n + 1)));
    auto slab = trivial_slab<Rational>(P);
    EXPECT_TRUE(box_is_empty(slab, P));
    EXPECT_LE(box_volume(slab), r.volume);
    EXPECT_GE(box_volume(slab), q(1, static_cast<long long>(n + 1)));
    auto torus = largest_empty_toroidal_box<Rational>(P.with_space(Space::torus));
    EXPECT_GE(torus.volume, r.volume);
  }
}

TEST(TrivialSlab, Examples) {
  EXPECT_EQ(box_volume(trivial_slab<Rational>(pts({{q(1, 2)}}))), q(1, 2));
  EXPECT_EQ(trivial_slab<Rational>(PointSet::empty(3)), ExactBox::unit(3));
  EXPECT_EQ(box_volume(trivial_slab<Rational>(pts({{q(1, 4)}, {q(1, 2)}, {q(3, 4)}}))), q(1, 4));
}

TEST(LargestEmptyToroidalBox, Examples) {
  PointSet one = pts({{q(1, 2), q(1, 2)}}).with_space(Space::torus);
  EXPECT_EQ(largest_empty_toroidal_box<Rational>(one).volume, 1);
  PointSet line = pts({{q(2, 7)}}).with_space(Space::torus);
  EXPECT_EQ(largest_empty_toroidal_box<Rational>(line).volume, 1);
  PointSet thirds = pts({{Rational(0)}, {q(1, 3)}, {q(2, 3)}}).with_space(Space::torus);
  EXPECT_EQ(largest_empty_toroidal_box<Rational>(thirds).volume, q(1, 3));
  auto empty = largest_empty_toroidal_box<Rational>(PointSet::empty(2, Space::torus));
  EXPECT_EQ(empty.volume, 1);
}

TEST(LargestEmptyToroidalBox, MatchesUnprunedEnumeration) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    PointSet P = random_grid_set(8, 2, 41, rng, Space::torus);
    const Rational expect = brute_force_toroidal_dispersion(P);
    for (auto m : kMethods2d) {
      auto r = largest_empty_toroidal_box<Rational>(P, with(m));
      ASSERT_EQ(r.volume, expect) << trial;
      EXPECT_TRUE(box_is_empty(r.witness, P));
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    PointSet P = random_grid_set(5, 3, 11, rng, Space::torus);
    ASSERT_EQ(largest_empty_toroidal_box<Rational>(P).volume, brute_force_toroidal_dispersion(P));
  }
}
