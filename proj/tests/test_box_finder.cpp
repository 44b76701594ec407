#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "disperse/box_finder.hpp"
#include "disperse/construction.hpp"
#include "disperse/oracle.hpp"
#include "test_support.hpp"

using namespace disperse;
using disperse::testing::random_grid_set;

TEST(WeightSpec, ValidatesHypotheses) {
  EXPECT_NO_THROW(weight_presets::two_level_best().validate());
  EXPECT_NO_THROW(weight_presets::two_level_corner(3).validate());
  EXPECT_THROW(WeightSpec::two_level(3.0, 2.9).validate(), Error);
  EXPECT_THROW(WeightSpec::two_level(3.0, 4.0).validate(), Error);
  EXPECT_THROW(WeightSpec::simple(-1.0).validate(), Error);
}

TEST(WeightSpec, MassMatchesQuadrature) {
  for (const WeightSpec& w : {WeightSpec::simple(4.0), weight_presets::two_level_best()}) {
    const int steps = 2'000'000;
    const double h = w.R0 / steps;
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) sum += w.f((i + 0.5) * h) * h;
    EXPECT_NEAR(sum, w.mass(), 1e-5);
  }
}

TEST(WeightAt, Examples) {
  const std::size_t n = 100, d = 2;
  WeightSpec simple = WeightSpec::simple(4.0);
  const double delta = finder_delta(4.0, n, d);
  std::vector<double> edge{delta, 0.0};
  EXPECT_NEAR(weight_at(edge, n, d, simple), 0.0, 1e-12);
  std::vector<double> half{delta / 2, -delta / 4};
  EXPECT_NEAR(weight_at(half, n, d, simple), 2.0 * std::log(2.0), 1e-12);
  std::vector<double> outside{2 * delta, 0.0};
  EXPECT_EQ(weight_at(outside, n, d, simple), 0.0);

  WeightSpec two = weight_presets::two_level_best();
  const double delta2 = finder_delta(two.R0, n, d);
  std::vector<double> near{delta2 / 100, 0.0};
  EXPECT_NEAR(weight_at(near, n, d, two), std::log(two.R0 / *two.T), 1e-12);
}

TEST(FindTranslate, TrivialInputsAcceptImmediately) {
  PointSet corner = PointSet::from_real(2, std::vector<double>(2 * 50, 1.0));
  auto r = find_translate(corner, default_finder_params(WeightSpec::simple(4.0), 2, 1));
  EXPECT_TRUE(r.accepted);
  EXPECT_EQ(r.samples, 1u);
  EXPECT_EQ(r.weight_sum, 0.0);
}

TEST(FindTranslate, RejectsR0AboveN) {
  std::mt19937_64 rng(1);
  PointSet P = random_grid_set(3, 2, 100, rng);
  EXPECT_THROW(find_translate(P, default_finder_params(WeightSpec::simple(4.0), 2, 1)), PreconditionError);
}

TEST(FindTranslate, AcceptsOnNearlyAllSeeds) {
  int accepted = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    PointSet P = random_points(100, 2, 1000 + seed);
    accepted += find_translate(P, default_finder_params(WeightSpec::simple(4.0), 2, seed)).accepted;
  }
  EXPECT_GE(accepted, 99);
}

TEST(Shave, Examples) {
  RealBox none = shave({}, 0.25, 3);
  EXPECT_NEAR(box_volume(none), std::pow(0.5, 3), 1e-15);

  std::vector<std::vector<double>> pts{{0.3, -0.1}, {-0.2, 0.25}};
  RealBox b = shave(pts, 0.5, 2);
  EXPECT_DOUBLE_EQ(b.axes[0].lo, -0.5);
  EXPECT_DOUBLE_EQ(b.axes[0].hi, 0.3);
  EXPECT_DOUBLE_EQ(b.axes[1].lo, -0.5);
  EXPECT_DOUBLE_EQ(b.axes[1].hi, 0.25);
  EXPECT_NEAR(box_volume(b), 0.6, 1e-15);
  EXPECT_NEAR(shave_lower_bound(pts, 0.5, 2), std::sqrt(0.6) * std::sqrt(0.5), 1e-12);

  std::vector<std::vector<double>> boundary{{0.5, 0.0}};
  EXPECT_NEAR(box_volume(shave(boundary, 0.5, 2)), 1.0, 1e-15);

  std::vector<std::vector<double>> far{{0.6, 0.0}};
  EXPECT_THROW(shave(far, 0.5, 2), PreconditionError);
}

TEST(Shave, LemmaBoundAndEmptinessOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const double delta = 0.1 + 0.4 * (trial % 7) / 7.0;
    std::vector<std::vector<double>> pts(trial % 12);
    for (auto& p : pts) {
      p.resize(d);
      for (auto& x : p) x = delta * u(rng);
    }
    RealBox b = shave(pts, delta, d);
    double bound = shave_lower_bound(pts, delta, d);
    EXPECT_GE(box_volume(b), bound * (1 - 1e-12));
    for (const auto& p : pts) EXPECT_FALSE(box_contains_point<double>(b, p));
    for (const auto& iv : b.axes) {
      EXPECT_GE(iv.lo, -delta);
      EXPECT_LE(iv.hi, delta);
    }
  }
}

TEST(FindEmptyBox, EmptySetGivesFullNeighbourhood) {
  PointSet P = PointSet::from_real(2, std::vector<double>(2 * 16, 1.0));
  CertifiedBox cb = find_empty_box(P, default_finder_params(WeightSpec::simple(4.0), 2, 3));
  EXPECT_NEAR(cb.volume, 4.0 / 16.0, 1e-12);
  EXPECT_NEAR(cb.certificate.lemma_lower_bound, 4.0 / 16.0, 1e-12);
}

TEST(FindEmptyBox, CertifiedAndBelowOracleOnRandomSets) {
  for (std::size_t n : {100u, 400u}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PointSet P = random_points(n, 2, seed * 31 + n);
      CertifiedBox cb = find_empty_box(P, default_finder_params(weight_presets::simple_default(2), 2, seed));
      EXPECT_TRUE(box_is_empty(cb.box, P));
      EXPECT_TRUE(inside_unit_cube(cb.box));
      EXPECT_GE(cb.volume, cb.certificate.lemma_lower_bound * (1 - 1e-12));
      EXPECT_LE(cb.volume, to_double(largest_empty_box<Rational>(P).volume) * (1 + 1e-12));
      if (cb.certificate.accepted) {
        EXPECT_TRUE(cb.certificate.theorem_bound_met);
        EXPECT_GE(cb.volume, theorem1_bound(2, n));
      }
    }
  }
}

TEST(FindEmptyBox, TwoLevelCapKeepsPointsAwayFromCentre) {
  const WeightSpec w = weight_presets::two_level_best();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PointSet P = random_points(300, 2, 500 + seed);
    CertifiedBox cb = find_empty_box(P, default_finder_params(w, 2, seed));
    if (!cb.certificate.accepted) continue;
    const double delta = finder_delta(w.R0, P.size(), 2);
    for (std::size_t i = 0; i < P.size(); ++i) {
      auto p = P.real_point(i);
      double norm = std::max(std::abs(p[0] - cb.translate[0]), std::abs(p[1] - cb.translate[1]));
      if (norm > delta) continue;
      EXPECT_GT(4.0 * 300 * norm * norm, *w.T);
    }
    EXPECT_GE(cb.volume, finite_n_guarantee(w, 2, P.size()) * (1 - 1e-12));
  }
}

TEST(Bounds, ClosedForms) {
  EXPECT_NEAR(theorem1_bound(2, 100), 0.2 * 4 / std::exp(1.0) / 100, 1e-15);
  EXPECT_NEAR(theorem1_bound(2, 100), 0.002943, 5e-7);
  EXPECT_NEAR(theorem1_bound(2, 400), 0.002207, 5e-7);
  const WeightSpec w = weight_presets::two_level_best();
  EXPECT_GE(theorem3_target(w, 2, 1), 1.50476);
  EXPECT_LT(theorem3_target(w, 2, 1), 1.50477);
  for (std::size_t d = 1; d <= 6; ++d) {
    const double D = static_cast<double>(d);
    const double corner = theorem3_target(weight_presets::two_level_corner(d), d, 1);
    EXPECT_GE(corner, 2 * D / std::exp(1.0) * (1 + std::exp(-2 * D)));
    EXPECT_GT(corner, theorem3_target(weight_presets::simple_default(d), d, 1));
  }
}
