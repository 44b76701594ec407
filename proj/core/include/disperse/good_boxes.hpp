#pragma once

#include <cstdint>
#include <optional>

#include "disperse/radix.hpp"

namespace disperse {

/// [s,u) is p-bad when, for some k >= 0, it contains some a/p^(k+1) and
/// u - s < 2 p^(-k-2).
bool is_p_bad(const Interval<Rational>& iv, std::uint64_t p);

/// [a/p^level, b/p^level).
struct PInterval {
  BigInt a;
  BigInt b;
  unsigned level = 0;

  Interval<Rational> interval(std::uint64_t p) const;
};

/// With k the least integer such that u - s >= p^-k, the largest
/// [a/p^(k+1), b/p^(k+1)) inside [s,u).
PInterval well_shrunk_subinterval(const Interval<Rational>& iv, std::uint64_t p);

struct GoodBoxSearch {
  ExactBox alpha;  // the input shrunk to volume 1/n
  std::optional<GoodPair> pair;
  ExactBox beta;
  /// Axis where beta needs more than s digits below its canonical box.
  std::optional<std::size_t> failing_axis;
  bool volume_too_small = false;
};

/// Shrinks alpha to volume 1/n along its last axis, replaces every side by
/// its well-shrunk subinterval and tests the smallest canonical box around
/// the result.
GoodBoxSearch contains_good_box(const ExactBox& alpha, std::uint64_t n, const ConstructionParams& params);

struct GoodBoxReport {
  bool all_met = true;
  std::optional<GoodPair> first_missed;
  std::uint64_t pairs_checked = 0;
  std::uint64_t canonical_boxes = 0;
};

/// Exhaustive check that P meets every good box for this n. Every canonical
/// box with n/gamma^s <= D(B) <= 4n is paired with every offset tuple whose
/// beta has volume in [1/(4n), 1/n], so boxes with several writings are
/// covered once per writing. Throws ResourceLimit past `max_pairs`.
GoodBoxReport meets_all_good_boxes(const PointSet& set, std::uint64_t n, const ConstructionParams& params,
                                   std::uint64_t max_pairs = 2'000'000'000ULL);

}  // namespace disperse
