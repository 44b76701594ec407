#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "disperse/construction.hpp"

namespace disperse {

/// Per-axis (alpha_i, delta_i, b_i, c_i) in Z/p_i^s. Its solution set is
/// {k in [0, gamma^s) : reversal of (alpha_i + k delta_i mod p_i^s) in [b_i, c_i) for all i}.
struct SystemTuple {
  std::vector<std::uint64_t> alpha, delta, b, c;
};

ResidueSet solve_system(const SystemTuple& tuple, const ConstructionParams& params);

/// All solution sets, sorted and without repeats. Offsets range over
/// 0 <= b, c <= p^s so that the full block c = p^s of a good pair is included.
/// Throws ResourceLimit past `max_sets` distinct sets.
std::vector<ResidueSet> enumerate_L_prime(const ConstructionParams& params, std::uint64_t max_sets = 50'000'000);

/// The scaled coordinates in which representatives live (sigma = 2 gamma^e_D / n).
struct RepresentativeSpace {
  std::uint64_t a_step = 0;      // A' is a multiple of 2 gamma^(e_D - e_A)
  std::uint64_t d_floor = 0;     // D' > 2 gamma^(e_D - s) - 2
  std::uint64_t d_max = 0;       // D' <= 8 gamma^e_D
  std::uint64_t domain = 0;      // Y' is cut to [0, 2 gamma^(e_D + e_X))
  std::uint64_t window = 0;      // anchors cover [x', x' + gamma^(e_D - e_W))
  std::uint64_t period = 0;      // gamma^s
  std::uint64_t min_size = 0;    // |Y'| >= min_size
};

/// The minimum size is ceil(gamma^e_X / 16) + 1 when gamma^(e_X - s) >= 16,
/// the regime where the counting argument for good pairs applies, else 1.
RepresentativeSpace representative_space(const ConstructionParams& params);

struct Representative {
  std::uint32_t A = 0;
  std::uint32_t D = 0;
  std::uint32_t L = 0;  // index into the table's residue sets
};

struct RepresentativeTable {
  RepresentativeSpace space;
  std::vector<ResidueSet> L_prime;
  std::vector<Representative> reps;
};

/// |(A + L D) cap [0, domain)|.
std::uint64_t representative_size(std::uint64_t A, std::uint64_t D, const ResidueSet& L, std::uint64_t domain);

/// Elements of Y' in ascending order.
std::vector<std::uint64_t> representative_elements(const Representative& rep, const RepresentativeTable& table);

/// Whether [x, x + window) meets Y'.
bool window_hits(const Representative& rep, std::uint64_t x, const RepresentativeTable& table);

RepresentativeTable enumerate_representatives(const ConstructionParams& params,
                                              std::uint64_t max_reps = 200'000'000);

enum class SelectionMethod { greedy, potential };

struct Selection {
  std::vector<std::uint64_t> anchors;
  std::uint64_t budget = 0;
  bool complete = false;
  /// Unhit representatives before each pick, followed by the final count.
  std::vector<std::uint64_t> unhit_trace;
};

/// Picks anchors one at a time until every representative is hit or the
/// budget ceil(multiplier * gamma^s * ln gamma) runs out.
/// greedy: the anchor hitting the most unhit representatives.
/// potential: the anchor maximising sum over newly hit r of (1 - q_r)^(picks left - 1),
/// q_r being the fraction of anchors that hit r. Ties go to the smallest anchor.
Selection select_X_prime(const RepresentativeTable& table, const ConstructionParams& params,
                         SelectionMethod method = SelectionMethod::greedy);

/// r(X + [0, n / gamma^e_W)) with X = (n / (2 gamma^e_D)) X'.
PointSet derandomized_stage1(std::uint64_t n, const std::vector<std::uint64_t>& anchors,
                             const ConstructionParams& params);

/// FNV-1a over the parameter description.
std::uint64_t params_hash(const ConstructionParams& params);

struct PreprocessCache {
  std::string params_text;
  std::uint64_t hash = 0;
  RepresentativeTable table;
  std::vector<std::uint64_t> anchors;
};

PreprocessCache preprocess(const ConstructionParams& params, SelectionMethod method = SelectionMethod::greedy);

void write_cache(const std::filesystem::path& path, const PreprocessCache& cache);
/// Throws ParseError on a malformed file and Error{invalid_argument} when the
/// cache was built for different parameters.
PreprocessCache read_cache(const std::filesystem::path& path, const ConstructionParams& params);

/// Derandomized stage 1 followed by stage 2, with n rounded down to a valid
/// size. Runs the preprocessing step unless a matching cache is supplied.
Construction derandomized_construction(std::uint64_t n, const ConstructionParams& params,
                                       const PreprocessCache* cache = nullptr);

}  // namespace disperse
