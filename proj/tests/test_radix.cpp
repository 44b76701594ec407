#include <gtest/gtest.h>

#include <random>
#include <set>

#include "disperse/radix.hpp"
#include "test_support.hpp"

using namespace disperse;
using disperse::testing::q;
using disperse::testing::random_canonical_box;
using disperse::testing::random_good_pair;

namespace {

// Desk primes with a longer step exponent, for which the window-shrink
// inequality holds at n = 2 * 6^5.
ConstructionParams shrink_variant() {
  ConstructionParams c = ConstructionParams::desk(2);
  c.e_D = 5;
  c.preset = Preset::custom;
  return c;
}

std::set<BigInt> scan_preimage(const CanonicalBox& B, const ConstructionParams& params, const BigInt& limit) {
  std::set<BigInt> out;
  const ExactBox box = B.box(params);
  for (BigInt x = 0; x < limit; ++x) {
    auto r = radix_point(x.convert_to<std::uint64_t>(), params);
    if (box_contains_point<Rational>(box, r)) out.insert(x);
  }
  return out;
}

}  // namespace

TEST(DigitReverse, Examples) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) EXPECT_EQ(digit_reverse(std::uint64_t{0}, p), 0);
  EXPECT_EQ(digit_reverse(std::uint64_t{6}, 2), q(3, 8));
  EXPECT_EQ(digit_reverse(std::uint64_t{5}, 3), q(7, 9));
  EXPECT_EQ(digit_reverse(BigInt(5), 3), q(7, 9));
  EXPECT_EQ(reverse_digits(6, 2, 3), 3u);
  EXPECT_EQ(reverse_digits(1, 2, 3), 4u);
}

TEST(DigitReverse, IsABijectionOntoTheGrid) {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    for (unsigned k = 0; k <= 6; ++k) {
      const std::uint64_t m = ipow(p, k);
      std::set<Rational> seen;
      for (std::uint64_t x = 0; x < m; ++x) {
        Rational r = digit_reverse(x, p);
        ASSERT_GE(r, 0);
        ASSERT_LT(r, 1);
        ASSERT_EQ(disperse::floor(r * m), r * m);
        seen.insert(r);
      }
      EXPECT_EQ(seen.size(), m);
    }
  }
}

TEST(RadixPoint, Examples) {
  auto desk = ConstructionParams::desk(2);
  EXPECT_EQ(radix_point(0, desk), (std::vector<Rational>{0, 0}));
  EXPECT_EQ(radix_point(5, desk), (std::vector<Rational>{q(5, 8), q(7, 9)}));
  EXPECT_EQ(radix_point(1, desk), (std::vector<Rational>{q(1, 2), q(1, 3)}));
}

TEST(ConstructionParams, Presets) {
  auto paper = ConstructionParams::paper(2);
  EXPECT_EQ(paper.primes, (std::vector<std::uint64_t>{5, 7}));
  EXPECT_EQ(paper.gamma(), 35);
  EXPECT_EQ(paper.n_modulus(), 2 * disperse::pow(BigInt(35), 11));
  // The (d+i)-th prime rule gives p_1 = 2d + 1 for d <= 3.
  EXPECT_FALSE(paper.translate_claim_valid());
  EXPECT_TRUE(paper.translate_claim_relaxed());
  EXPECT_TRUE(ConstructionParams::paper(4).translate_claim_valid());
  EXPECT_TRUE(paper.shrink_volume_valid());
  EXPECT_EQ(ConstructionParams::paper(3).primes, (std::vector<std::uint64_t>{7, 11, 13}));

  auto desk = ConstructionParams::desk(2);
  EXPECT_EQ(desk.primes, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(desk.n_modulus(), 432);
  EXPECT_FALSE(desk.translate_claim_valid());
  EXPECT_EQ(desk.round_down_n(1000), 864u);
  EXPECT_EQ(desk.round_down_n(431), 0u);
  EXPECT_THROW(desk.check_n(433), PreconditionError);
  EXPECT_FALSE(desk.shrink_condition_holds(432));

  EXPECT_TRUE(shrink_variant().shrink_condition_holds(15552));
  EXPECT_TRUE(ConstructionParams::toy().shrink_condition_holds(512));

  auto bad = desk;
  bad.primes = {3, 2};
  EXPECT_THROW(bad.validate(), Error);
  bad.primes = {2, 4};
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Primes, Basics) {
  EXPECT_EQ(nth_prime(1), 2u);
  EXPECT_EQ(nth_prime(6), 13u);
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(91));
  EXPECT_FALSE(is_prime(1));
}

TEST(CanonicalPreimage, Examples) {
  auto desk = ConstructionParams::desk(2);
  CanonicalBox unit{{0, 0}, {0, 0}};
  auto u = canonical_preimage(unit, desk);
  EXPECT_EQ(u.A, 0);
  EXPECT_EQ(u.D, 1);

  CanonicalBox B{{1, 1}, {1, 1}};
  EXPECT_EQ(B.box(desk).axes[0].lo, q(1, 2));
  EXPECT_EQ(B.box(desk).axes[1].hi, q(2, 3));
  auto pr = canonical_preimage(B, desk);
  EXPECT_EQ(pr.A, 1);
  EXPECT_EQ(pr.D, 6);
  EXPECT_EQ(scan_preimage(B, desk, 12), (std::set<BigInt>{1, 7}));
  EXPECT_EQ(radix_point(7, desk), (std::vector<Rational>{q(7, 8), q(5, 9)}));
}

TEST(CanonicalPreimage, MatchesBruteForceScan) {
  std::mt19937_64 rng(21);
  for (auto params : {ConstructionParams::desk(2), ConstructionParams::desk(3)}) {
    for (int trial = 0; trial < 200; ++trial) {
      CanonicalBox B = random_canonical_box(params, 1, 2000, rng);
      auto pr = canonical_preimage(B, params);
      EXPECT_EQ(pr.D * B.volume(params), 1);
      std::set<BigInt> expect{pr.A, pr.A + pr.D, pr.A + 2 * pr.D};
      EXPECT_EQ(scan_preimage(B, params, 3 * pr.D), expect);
      EXPECT_TRUE(radix_in_canonical(pr.A + 5 * pr.D, B, params));
      EXPECT_FALSE(radix_in_canonical(pr.A + 5 * pr.D + 1, B, params) && pr.D > 1);
    }
  }
}

TEST(ResidueSet, Examples) {
  auto desk = ConstructionParams::desk(2);
  GoodPair corner{{{0, 0}, {0, 0}}, {0, 0}, {1, 1}};
  ResidueSet L = residue_set(corner, desk);
  EXPECT_EQ(L.period, 6u);
  EXPECT_EQ(L.members, (std::vector<std::uint64_t>{0}));

  GoodPair full{{{1, 2}, {2, 1}}, {0, 0}, {2, 3}};
  EXPECT_EQ(residue_set(full, desk).members.size(), 6u);
}

TEST(ResidueSet, DensityMatchesVolumeRatio) {
  std::mt19937_64 rng(22);
  for (auto [params, n] : {std::pair{ConstructionParams::desk(2), std::uint64_t{432}},
                           std::pair{ConstructionParams::paper(2), std::uint64_t{2 * 42875}}}) {
    const int trials = params.preset == Preset::desk ? 200 : 40;
    for (int trial = 0; trial < trials; ++trial) {
      GoodPair g = random_good_pair(params, n, rng);
      ResidueSet L = residue_set(g, params);
      EXPECT_EQ(Rational(BigInt(L.members.size())),
                Rational(params.gamma_pow(params.s)) * g.beta_volume(params) / g.B.volume(params));
      auto pr = canonical_preimage(g.B, params);
      for (std::uint64_t k = 0; k < 2 * L.period; k += 1 + k % 5)
        EXPECT_EQ(radix_in_beta(pr.A + k * pr.D, g, params), L.contains(k));
    }
  }
}

TEST(BoxType, FloorRounding) {
  auto params = shrink_variant();
  const std::uint64_t n = 15552;
  const std::uint64_t gA = n / params.gamma_pow_u64(params.e_A), gD = n / params.gamma_pow_u64(params.e_D);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    CanonicalBox B = random_canonical_box(params, BigInt(n / 6), BigInt(4 * n), rng);
    auto pr = canonical_preimage(B, params);
    BoxType t = box_type(B, n, params);
    EXPECT_EQ(t.A % gA, 0);
    EXPECT_EQ(t.D % gD, 0);
    EXPECT_LE(t.A, pr.A);
    EXPECT_LT(pr.A - t.A, gA);
    EXPECT_LE(t.D, pr.D);
    EXPECT_LT(pr.D - t.D, gD);
    EXPECT_GT(t.D + gD, BigInt(n / 6));
  }
  CanonicalBox tiny{{0, 0}, {0, 0}};
  try {
    box_type(tiny, n, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.category(), ErrorCategory::out_of_range);
  }
}

TEST(BoxType, TypeCountIsBounded) {
  auto params = ConstructionParams::desk(2);
  const std::uint64_t n = 432;
  std::set<std::pair<BigInt, BigInt>> types;
  for (unsigned k1 = 0; k1 <= 12; ++k1)
    for (unsigned k2 = 0; k2 <= 8; ++k2) {
      const std::uint64_t D = ipow(2, k1) * ipow(3, k2);
      if (D < n / 6 || D > 4 * n) continue;
      for (std::uint64_t a1 = 0; a1 < ipow(2, k1); ++a1)
        for (std::uint64_t a2 = 0; a2 < ipow(3, k2); ++a2) {
          BoxType t = box_type(CanonicalBox{{a1, a2}, {k1, k2}}, n, params);
          types.insert({t.A, t.D});
        }
    }
  EXPECT_GT(types.size(), 0u);
  EXPECT_LE(BigInt(types.size()), params.gamma_pow(params.e_A + params.e_D + 1));
}

TEST(BoxType, WindowShrinkHoldsWhenTheInequalityDoes) {
  auto params = shrink_variant();
  const std::uint64_t n = 15552;
  const BigInt w = BigInt(n) / params.gamma_pow(params.e_W);
  const BigInt domain = BigInt(n) * params.gamma_pow(params.e_X);
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 300; ++trial) {
    CanonicalBox B = random_canonical_box(params, BigInt(n / 6), BigInt(4 * n), rng);
    auto pr = canonical_preimage(B, params);
    BoxType t = box_type(B, n, params);
    for (int rep = 0; rep < 20; ++rep) {
      BigInt x = std::uniform_int_distribution<std::uint64_t>(0, domain.convert_to<std::uint64_t>() - 1)(rng);
      BigInt k = x <= t.A ? BigInt(0) : BigInt((x - t.A + t.D - 1) / t.D);
      for (; t.A + k * t.D < x + w / 2; ++k) {
        const BigInt y = pr.A + k * pr.D;
        EXPECT_GE(y, x);
        EXPECT_LT(y, x + w);
      }
    }
  }
}
