#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "disperse/geometry.hpp"

namespace disperse {

enum class WeightMode { simple, two_level };

/// Radial weight f on [0, inf). simple: log(R0/R) below R0. two_level: capped
/// at log(R0/T) for R <= T.
struct WeightSpec {
  double R0 = 0.0;
  std::optional<double> T;
  WeightMode mode = WeightMode::simple;

  static WeightSpec simple(double r0);
  static WeightSpec two_level(double r0, double t);

  /// Throws Error{invalid_argument} when the parameters are unusable.
  void validate() const;
  double f(double R) const;
  /// Integral of f over [0, R0].
  double mass() const;
};

namespace weight_presets {
WeightSpec simple_default(std::size_t d);  // R0 = 2d
WeightSpec two_level_corner(std::size_t d);  // (2d, 2d e^{-2d})
WeightSpec two_level_best();  // (3.69513, 0.101622), tuned for d = 2
}  // namespace weight_presets

struct FinderParams {
  WeightSpec weight;
  std::uint64_t sample_budget = 0;
  std::uint64_t rng_seed = 0;
};

/// Budget 1000 d.
FinderParams default_finder_params(const WeightSpec& weight, std::size_t d, std::uint64_t seed);

/// delta = (R0/n)^{1/d} / 2.
double finder_delta(double R0, std::size_t n, std::size_t d);

/// F(x) = f(2^d n |x|_inf^d); zero outside [-delta, delta]^d.
double weight_at(std::span<const double> x, std::size_t n, std::size_t d, const WeightSpec& spec);

struct TranslateResult {
  std::vector<double> t;
  double weight_sum = 0.0;
  bool accepted = false;
  std::uint64_t samples = 0;
};

/// Acceptance threshold M / (1 - 2 delta)^d.
double acceptance_threshold(const WeightSpec& spec, std::size_t n, std::size_t d);

TranslateResult find_translate(const PointSet& set, const FinderParams& params);

/// Shaves B = [-delta, delta]^d around the origin. Points are relative to the
/// centre; each bounds only its dominant axis (ties to the lowest index).
RealBox shave(const std::vector<std::vector<double>>& shifted, double delta, std::size_t d);

/// (2 delta)^d * prod sqrt(|p|_inf / delta).
double shave_lower_bound(const std::vector<std::vector<double>>& shifted, double delta, std::size_t d);

struct Certificate {
  bool accepted = false;
  bool theorem_bound_met = false;
  double lemma_lower_bound = 0.0;
  double weight_sum = 0.0;
  double target = 0.0;  // the volume the certificate was checked against
};

struct CertifiedBox {
  RealBox box;
  double volume = 0.0;
  std::vector<double> translate;
  Certificate certificate;
};

CertifiedBox find_empty_box(const PointSet& set, const FinderParams& params);

/// (1/n)(2d/e)(1 - 4d n^{-1/d}).
double theorem1_bound(std::size_t d, std::size_t n);

/// (R0/n) exp(-M / (2d)): the certified volume as n grows.
double theorem3_target(const WeightSpec& spec, std::size_t d, std::size_t n);

/// (R0/n) exp(-M (1 - 2 delta)^{-d} / (2d)): the volume an accepted run guarantees at this n.
double finite_n_guarantee(const WeightSpec& spec, std::size_t d, std::size_t n);

}  // namespace disperse
