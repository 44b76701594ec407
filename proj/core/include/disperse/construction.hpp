#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "disperse/radix.hpp"

namespace disperse {

/// r(X + [0, window)) with duplicate integers merged.
PointSet radix_windows(const std::vector<std::uint64_t>& anchors, std::uint64_t window,
                       const ConstructionParams& params);

struct Stage1Options {
  /// Re-draw X until the exhaustive good-box check passes.
  bool verify = false;
  unsigned max_attempts = 20;
};

struct Stage1Result {
  PointSet points;
  std::vector<std::uint64_t> anchors;
  unsigned attempts = 0;
  bool verified = false;
};

/// Draws ceil(multiplier * gamma^s * ln gamma) anchors uniformly from
/// [0, n gamma^e_X) and returns r(X + [0, n / gamma^e_W)).
Stage1Result stage1(std::uint64_t n, const ConstructionParams& params, std::uint64_t seed,
                    const Stage1Options& options = {});

/// Union of P + 2rv (v_i = 1/(p_i (p_i - 1)), r = 0..d), restricted to
/// prod [1/p_i, 1] and mapped affinely onto the unit cube.
PointSet stage2(const PointSet& P, const ConstructionParams& params);

/// prod p_i/(p_i - 1) / n: every box of this volume meets the stage-2 output.
Rational stage2_guarantee(std::uint64_t n, const ConstructionParams& params);

struct Construction {
  PointSet points;
  std::uint64_t n_requested = 0;
  std::uint64_t n_construction = 0;  // the divisibility-respecting n actually used
  Rational guarantee;                // every box at least this large is hit
  bool verified = false;
};

/// Stage 1 followed by stage 2. n is rounded down to a multiple of
/// 2 gamma^e_D; Error{precondition} when no such multiple exists.
Construction hh_modified(std::uint64_t n, const ConstructionParams& params, std::uint64_t seed,
                         const Stage1Options& options = {});

/// n points with coordinates k / 2^32, k uniform.
PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed);
/// Midpoint grid with m points per axis: coordinates (2j+1)/(2m).
PointSet grid_points(std::size_t m, std::size_t d);
/// First n Halton points in bases 2, 3, 5, ... starting at index 0.
PointSet halton_points(std::size_t n, std::size_t d);

}  // namespace disperse
