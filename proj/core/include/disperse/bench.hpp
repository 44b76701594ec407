#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "disperse/radix.hpp"

namespace disperse {

/// Asymptotic lower bound on c_d from the two-level weight: R0 exp(-(R0 - T) / (2d)),
/// with the tuned parameters for d = 2 and the corner parameters otherwise.
double theorem3_constant(std::size_t d);

/// (1/n)(2d/e)(1 - 4d n^{-1/d}) clamped at 0.
double theorem1_bound_clamped(std::size_t d, std::uint64_t n);

/// 8000 d^2 log d / n.
double upper_construction_bound(std::size_t d, std::uint64_t n);

struct BenchRun {
  std::string construction;  // random | grid | halton | hh-modified | derand
  std::size_t d = 0;
  std::uint64_t n = 0;
  std::optional<std::uint64_t> seed;
  Preset preset = Preset::desk;
};

struct BenchConfig {
  int version = 1;
  std::uint64_t node_budget = 200'000'000;
  unsigned jobs = 0;  // 0 = hardware concurrency
  std::vector<BenchRun> runs;
};

/// Versioned key-value text:
///   version = 1
///   node_budget = 200000000
///   jobs = 1
///   run = random d=2 n=100 seed=7
///   run = hh-modified d=2 n=432 seed=1 preset=desk
/// Blank lines and lines starting with '#' are ignored.
BenchConfig parse_bench_config(std::istream& in);
BenchConfig read_bench_config(const std::filesystem::path& path);

struct BenchRow {
  std::string construction;
  std::size_t d = 0;
  std::uint64_t n = 0;  // number of points evaluated
  std::optional<std::uint64_t> seed;
  double measured_volume = 0.0;
  double scaled = 0.0;
  double theorem1_bound = 0.0;
  double theorem3_target = 0.0;
  double upper_construction_bound = 0.0;
  std::string method;  // exact | finder | slab
};

/// Builds the point set for one run. Randomized constructions need a seed.
PointSet bench_points(const BenchRun& run);

BenchRow run_bench_row(const BenchRun& run, const BenchConfig& config);

std::string bench_csv_header();
std::string bench_csv_line(const BenchRow& row);

/// Evaluates every run (in parallel) and writes the CSV in input order.
std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream& csv);

}  // namespace disperse
