#include "disperse/box_finder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace disperse {

WeightSpec WeightSpec::simple(double r0) {
  WeightSpec w;
  w.R0 = r0;
  w.mode = WeightMode::simple;
  return w;
}

WeightSpec WeightSpec::two_level(double r0, double t) {
  WeightSpec w;
  w.R0 = r0;
  w.T = t;
  w.mode = WeightMode::two_level;
  return w;
}

void WeightSpec::validate() const {
  if (!(R0 > 0.0) || !std::isfinite(R0)) throw Error(ErrorCategory::invalid_argument, "R0 must be positive");
  if (mode == WeightMode::simple) {
    if (T) throw Error(ErrorCategory::invalid_argument, "simple weight takes no T");
    return;
  }
  if (!T) throw Error(ErrorCategory::invalid_argument, "two-level weight needs T");
  if (!(*T > 0.0 && *T < R0)) throw Error(ErrorCategory::invalid_argument, "two-level weight needs 0 < T < R0");
  if (!(R0 - *T < std::log(R0 / *T)))
    throw Error(ErrorCategory::invalid_argument, "two-level weight needs R0 - T < log(R0/T)");
}

double WeightSpec::f(double R) const {
  if (R >= R0) return 0.0;
  if (mode == WeightMode::two_level && R <= *T) return std::log(R0 / *T);
  if (R <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log(R0 / R);
}

double WeightSpec::mass() const { return mode == WeightMode::simple ? R0 : R0 - *T; }

namespace weight_presets {
WeightSpec simple_default(std::size_t d) { return WeightSpec::simple(2.0 * static_cast<double>(d)); }
WeightSpec two_level_corner(std::size_t d) {
  double r0 = 2.0 * static_cast<double>(d);
  return WeightSpec::two_level(r0, r0 * std::exp(-r0));
}
WeightSpec two_level_best() { return WeightSpec::two_level(3.69513, 0.101622); }
}  // namespace weight_presets

FinderParams default_finder_params(const WeightSpec& weight, std::size_t d, std::uint64_t seed) {
  return FinderParams{weight, 1000 * static_cast<std::uint64_t>(d), seed};
}

double finder_delta(double R0, std::size_t n, std::size_t d) {
  return 0.5 * std::pow(R0 / static_cast<double>(n), 1.0 / static_cast<double>(d));
}

namespace {

double sup_norm(std::span<const double> x) {
  double r = 0.0;
  for (double v : x) r = std::max(r, std::abs(v));
  return r;
}

double radial(double norm, std::size_t n, std::size_t d) {
  return std::pow(2.0 * norm, static_cast<double>(d)) * static_cast<double>(n);
}

void check_finder_input(const PointSet& set, const WeightSpec& spec) {
  if (set.dimension() == 0) throw PreconditionError("dimension must be positive");
  spec.validate();
  if (spec.R0 > static_cast<double>(set.size()))
    throw PreconditionError("R0 exceeds n; use the trivial slab instead");
  double delta = finder_delta(spec.R0, set.size(), set.dimension());
  if (!(delta < 0.5)) throw PreconditionError("delta must be below 1/2");
}

}  // namespace

double weight_at(std::span<const double> x, std::size_t n, std::size_t d, const WeightSpec& spec) {
  if (x.size() != d) throw DimensionMismatch("point dimension differs from d");
  double delta = finder_delta(spec.R0, n, d);
  double norm = sup_norm(x);
  if (norm >= delta) return 0.0;
  return spec.f(radial(norm, n, d));
}

double acceptance_threshold(const WeightSpec& spec, std::size_t n, std::size_t d) {
  double delta = finder_delta(spec.R0, n, d);
  return spec.mass() / std::pow(1.0 - 2.0 * delta, static_cast<double>(d));
}

TranslateResult find_translate(const PointSet& set, const FinderParams& params) {
  check_finder_input(set, params.weight);
  if (params.sample_budget == 0) throw Error(ErrorCategory::invalid_argument, "sample budget must be positive");
  const std::size_t d = set.dimension(), n = set.size();
  const double delta = finder_delta(params.weight.R0, n, d);
  const double threshold = acceptance_threshold(params.weight, n, d);
  const bool capped = params.weight.mode == WeightMode::two_level;
  const double cap = capped ? std::log(params.weight.R0 / *params.weight.T) : 0.0;

  std::mt19937_64 rng(params.rng_seed);
  std::uniform_real_distribution<double> coord(delta, 1.0 - delta);
  TranslateResult best;
  best.weight_sum = std::numeric_limits<double>::infinity();
  std::vector<double> t(d), rel(d);
  for (std::uint64_t s = 0; s < params.sample_budget; ++s) {
    for (auto& c : t) c = coord(rng);
    double sum = 0.0;
    for (std::size_t i = 0; i < n && sum <= best.weight_sum; ++i) {
      auto p = set.real_point(i);
      for (std::size_t a = 0; a < d; ++a) rel[a] = p[a] - t[a];
      sum += weight_at(rel, n, d, params.weight);
    }
    bool ok = sum <= threshold && (!capped || sum < cap);
    if (ok || sum < best.weight_sum || best.t.empty()) {
      best.t = t;
      best.weight_sum = sum;
    }
    best.samples = s + 1;
    if (ok) {
      best.accepted = true;
      break;
    }
  }
  return best;
}

RealBox shave(const std::vector<std::vector<double>>& shifted, double delta, std::size_t d) {
  std::vector<double> lo(d, delta), hi(d, delta);
  for (const auto& p : shifted) {
    if (p.size() != d) throw DimensionMismatch("point dimension differs from d");
    std::size_t dom = 0;
    for (std::size_t a = 1; a < d; ++a)
      if (std::abs(p[a]) > std::abs(p[dom])) dom = a;
    if (std::abs(p[dom]) > delta) throw PreconditionError("point lies outside [-delta, delta]^d");
    if (p[dom] <= 0.0) lo[dom] = std::min(lo[dom], -p[dom]);
    if (p[dom] >= 0.0) hi[dom] = std::min(hi[dom], p[dom]);
  }
  RealBox box;
  for (std::size_t a = 0; a < d; ++a) box.axes.push_back({-lo[a], hi[a], Openness::open});
  return box;
}

double shave_lower_bound(const std::vector<std::vector<double>>& shifted, double delta, std::size_t d) {
  double v = std::pow(2.0 * delta, static_cast<double>(d));
  for (const auto& p : shifted) v *= std::sqrt(sup_norm(p) / delta);
  return v;
}

CertifiedBox find_empty_box(const PointSet& set, const FinderParams& params) {
  if (set.space() != Space::cube) throw PreconditionError("find_empty_box expects a cube point set");
  TranslateResult tr = find_translate(set, params);
  const std::size_t d = set.dimension(), n = set.size();
  const double delta = finder_delta(params.weight.R0, n, d);

  // B is taken in absolute coordinates so that membership and the final box
  // sides compare original coordinates without re-rounding.
  std::vector<double> blo(d), bhi(d);
  for (std::size_t a = 0; a < d; ++a) {
    blo[a] = std::max(0.0, tr.t[a] - delta);
    bhi[a] = std::min(1.0, tr.t[a] + delta);
  }
  std::vector<double> lo(blo), hi(bhi);
  std::vector<std::vector<double>> inside;
  for (std::size_t i = 0; i < n; ++i) {
    auto p = set.real_point(i);
    bool in = true;
    for (std::size_t a = 0; a < d && in; ++a) in = blo[a] <= p[a] && p[a] <= bhi[a];
    if (!in) continue;
    std::vector<double> rel(d);
    for (std::size_t a = 0; a < d; ++a) rel[a] = std::clamp(p[a] - tr.t[a], -delta, delta);
    std::size_t dom = 0;
    for (std::size_t a = 1; a < d; ++a)
      if (std::abs(rel[a]) > std::abs(rel[dom])) dom = a;
    if (p[dom] <= tr.t[dom]) lo[dom] = std::max(lo[dom], p[dom]);
    if (p[dom] >= tr.t[dom]) hi[dom] = std::min(hi[dom], p[dom]);
    inside.push_back(std::move(rel));
  }

  CertifiedBox out;
  out.translate = tr.t;
  for (std::size_t a = 0; a < d; ++a) out.box.axes.push_back({lo[a], hi[a], Openness::open});
  out.volume = box_volume(out.box);
  if (!inside_unit_cube(out.box) || !box_is_empty(out.box, set))
    throw Error(ErrorCategory::internal, "finder box failed validation");

  auto& c = out.certificate;
  c.accepted = tr.accepted;
  c.weight_sum = tr.weight_sum;
  c.lemma_lower_bound = shave_lower_bound(inside, delta, d);
  const auto& w = params.weight;
  const double D = static_cast<double>(d);
  bool theorem1 = w.mode == WeightMode::simple && w.R0 == 2.0 * D &&
                  4.0 * D * std::pow(static_cast<double>(n), -1.0 / D) < 1.0;
  c.target = theorem1 ? theorem1_bound(d, n) : finite_n_guarantee(w, d, n);
  c.theorem_bound_met = tr.accepted && out.volume >= c.target * (1.0 - 1e-12);
  return out;
}

double theorem1_bound(std::size_t d, std::size_t n) {
  const double D = static_cast<double>(d), N = static_cast<double>(n);
  return (1.0 / N) * (2.0 * D / std::exp(1.0)) * (1.0 - 4.0 * D * std::pow(N, -1.0 / D));
}

double theorem3_target(const WeightSpec& spec, std::size_t d, std::size_t n) {
  return spec.R0 / static_cast<double>(n) * std::exp(-spec.mass() / (2.0 * static_cast<double>(d)));
}

double finite_n_guarantee(const WeightSpec& spec, std::size_t d, std::size_t n) {
  return spec.R0 / static_cast<double>(n) *
         std::exp(-acceptance_threshold(spec, n, d) / (2.0 * static_cast<double>(d)));
}

}  // namespace disperse
