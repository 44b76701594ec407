#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "disperse/good_boxes.hpp"
#include "test_support.hpp"

using namespace disperse;
using disperse::testing::q;
using disperse::testing::random_box_of_volume;
using disperse::testing::random_good_pair;
using disperse::testing::random_interval;

namespace {

Interval<Rational> iv(const Rational& s, const Rational& u) { return {s, u, Openness::half_open}; }

}  // namespace

TEST(IsPBad, Examples) {
  EXPECT_TRUE(is_p_bad(iv(q(49, 100), q(51, 100)), 2));
  EXPECT_FALSE(is_p_bad(iv(q(51, 100), q(99, 100)), 2));
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) EXPECT_FALSE(is_p_bad(iv(0, 1), p));
}

TEST(IsPBad, MatchesDefinitionScan) {
  std::mt19937_64 rng(31);
  for (std::uint64_t p : {2u, 3u, 5u}) {
    for (int trial = 0; trial < 2000; ++trial) {
      auto I = random_interval(0, rng, -5);
      bool expect = false;
      BigInt pk1 = p;  // p^(k+1)
      for (unsigned k = 0; k < 40 && !expect; ++k, pk1 *= p) {
        if (!(I.length() * pk1 * p < 2)) continue;
        expect = Rational(ceil(I.lo * pk1)) < I.hi * pk1;
      }
      EXPECT_EQ(is_p_bad(I, p), expect);
    }
  }
}

TEST(WellShrunk, Example) {
  PInterval w = well_shrunk_subinterval(iv(q(3, 10), q(8, 10)), 5);
  EXPECT_EQ(w.level, 2u);
  EXPECT_EQ(w.a, 8);
  EXPECT_EQ(w.b, 20);
  EXPECT_EQ(w.interval(5).length(), q(12, 25));
}

TEST(WellShrunk, AlignedIntervalKeepsEnoughLength) {
  for (std::uint64_t p : {3u, 5u, 7u}) {
    for (unsigned k = 0; k < 4; ++k) {
      const BigInt pk = disperse::pow(BigInt(p), k);
      auto I = iv(Rational(BigInt(1), pk) * 0, Rational(BigInt(1), pk));
      auto w = well_shrunk_subinterval(I, p).interval(p);
      EXPECT_GE(w.length(), (1 - q(2, static_cast<long long>(p))) * I.length());
    }
  }
}

TEST(WellShrunk, LengthAndWidthOnRandomIntervals) {
  std::mt19937_64 rng(32);
  for (std::uint64_t p : {3u, 5u, 7u, 11u}) {
    const Rational keep = 1 - q(2, static_cast<long long>(p));
    for (int trial = 0; trial < 10000; ++trial) {
      auto I = random_interval(0, rng);
      PInterval w = well_shrunk_subinterval(I, p);
      auto J = w.interval(p);
      ASSERT_GE(J.lo, I.lo);
      ASSERT_LE(J.hi, I.hi);
      ASSERT_LT(w.b - w.a, BigInt(p) * p);
      ASSERT_GE(J.length(), keep * I.length());
    }
  }
}

TEST(TranslateClaim, AtMostOneBadTranslate) {
  std::mt19937_64 rng(33);
  for (std::uint64_t p : {7u, 11u, 13u}) {
    const std::size_t dd = (p - 2) / 2;  // largest d with 2d + 1 < p
    const Rational delta(BigInt(1), BigInt(p * (p - 1)));
    int worst = 0;
    for (int trial = 0; trial < 10000; ++trial) {
      auto I = random_interval(q(1, static_cast<long long>(p)), rng);
      int bad = 0;
      for (std::size_t r = 0; r <= dd; ++r) {
        const Rational shift = 2 * static_cast<long long>(r) * delta;
        bad += is_p_bad(iv(I.lo - shift, I.hi - shift), p);
      }
      worst = std::max(worst, bad);
    }
    EXPECT_LE(worst, 1) << "p = " << p;
  }
}

TEST(TranslateClaim, NeedsTheStrictPrimeBound) {
  // p = 2d + 1, the first prime of Preset::paper at d = 2.
  const std::uint64_t p = 5;
  const Rational delta(BigInt(1), BigInt(p * (p - 1)));
  auto I = iv(q(4, 5) - q(1, 1000), q(4, 5) + q(1, 1000));
  EXPECT_TRUE(is_p_bad(I, p));
  EXPECT_TRUE(is_p_bad(iv(I.lo - 4 * delta, I.hi - 4 * delta), p));
}

namespace {

struct BadAxisTally {
  int found = 0;
  int failed = 0;
  int unexplained = 0;
};

BadAxisTally tally_bad_axes(const ConstructionParams& params, std::uint64_t n, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BadAxisTally t;
  for (int trial = 0; trial < trials; ++trial) {
    GoodBoxSearch r = contains_good_box(random_box_of_volume(params.d, n, rng), n, params);
    EXPECT_EQ(box_volume(r.alpha), Rational(BigInt(1), BigInt(n)));
    if (r.pair) {
      ++t.found;
      EXPECT_TRUE(is_good_pair(*r.pair, n, params));
      EXPECT_TRUE(box_within(r.pair->beta(params), r.alpha));
      continue;
    }
    ++t.failed;
    bool some_bad = false;
    for (std::size_t i = 0; i < params.d; ++i) some_bad = some_bad || is_p_bad(r.alpha.axes[i], params.primes[i]);
    t.unexplained += !some_bad;
  }
  return t;
}

}  // namespace

TEST(ContainsGoodBox, FailureOnlyAtBadAxis) {
  BadAxisTally t = tally_bad_axes(ConstructionParams::paper(2), 2 * ipow(35, 11), 1000, 34);
  EXPECT_GT(t.found, 0);
  EXPECT_GT(t.failed, 0);
  EXPECT_EQ(t.unexplained, 0);
}

TEST(ContainsGoodBox, DeskExponentsAreTooCoarseForTheBadAxisArgument) {
  // With s = 1 a well-shrunk side may need two extra digits, so failures
  // occur without any p-bad side.
  BadAxisTally t = tally_bad_axes(ConstructionParams::desk(2), 432, 1000, 35);
  EXPECT_GT(t.found, 0);
  EXPECT_GT(t.unexplained, 0);
}

TEST(ContainsGoodBox, BetaKeepsAQuarterOfTheVolume) {
  std::mt19937_64 rng(35);
  auto params = ConstructionParams::paper(2);
  const std::uint64_t n = 2 * ipow(35, 11);
  const Rational floor_vol = Rational(BigInt(1), BigInt(n)) * q(3, 5) * q(5, 7);
  for (int trial = 0; trial < 500; ++trial) {
    GoodBoxSearch r = contains_good_box(random_box_of_volume(2, n, rng), n, params);
    EXPECT_GE(box_volume(r.beta), floor_vol);
    EXPECT_GE(box_volume(r.beta), Rational(BigInt(1), BigInt(4 * n)));
  }
}

TEST(ContainsGoodBox, GoodBoxOfFullVolumeYieldsAGoodPairInside) {
  std::mt19937_64 rng(36);
  auto params = ConstructionParams::desk(2);
  const std::uint64_t n = 432;
  int tested = 0;
  for (int trial = 0; trial < 3000 && tested < 100; ++trial) {
    GoodPair g = random_good_pair(params, n, rng);
    if (g.beta_volume(params) != Rational(BigInt(1), BigInt(n))) continue;
    ++tested;
    GoodBoxSearch r = contains_good_box(g.beta(params), n, params);
    if (!r.pair) continue;
    EXPECT_TRUE(box_within(r.pair->beta(params), g.beta(params)));
  }
  EXPECT_GT(tested, 0);
}

TEST(MeetsAllGoodBoxes, TrivialCases) {
  auto params = ConstructionParams::desk(2);
  GoodBoxReport none = meets_all_good_boxes(PointSet::empty(2), 432, params);
  EXPECT_FALSE(none.all_met);
  ASSERT_TRUE(none.first_missed.has_value());
  EXPECT_TRUE(is_good_pair(*none.first_missed, 432, params));

  // r([0, 4n gamma^s)) meets every good box: A < D <= 4n and some k < gamma^s lies in L.
  std::vector<Rational> flat;
  for (std::uint64_t x = 0; x < 4 * 432 * 6; ++x)
    for (const auto& c : radix_point(x, params)) flat.push_back(c);
  PointSet grid = PointSet::from_exact(2, std::move(flat));
  EXPECT_TRUE(meets_all_good_boxes(grid, 432, params).all_met);
}
