#include "disperse/construction.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "disperse/good_boxes.hpp"

namespace disperse {

PointSet radix_windows(const std::vector<std::uint64_t>& anchors, std::uint64_t window,
                       const ConstructionParams& params) {
  std::vector<std::uint64_t> xs;
  xs.reserve(anchors.size() * window);
  for (auto a : anchors)
    for (std::uint64_t t = 0; t < window; ++t) xs.push_back(a + t);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Rational> flat;
  flat.reserve(xs.size() * params.d);
  for (auto x : xs)
    for (auto p : params.primes) flat.push_back(digit_reverse(x, p));
  return PointSet::from_exact(params.d, std::move(flat), Space::cube);
}

Stage1Result stage1(std::uint64_t n, const ConstructionParams& params, std::uint64_t seed,
                    const Stage1Options& options) {
  params.validate();
  params.check_n(n);
  const std::uint64_t domain = n * params.gamma_pow_u64(params.e_X);
  const std::uint64_t window = n / params.gamma_pow_u64(params.e_W);
  const std::uint64_t count = params.sample_count();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, domain - 1);
  Stage1Result out;
  std::optional<GoodPair> last_miss;
  const unsigned attempts = options.verify ? std::max(1u, options.max_attempts) : 1u;
  for (unsigned attempt = 1; attempt <= attempts; ++attempt) {
    out.anchors.clear();
    for (std::uint64_t j = 0; j < count; ++j) out.anchors.push_back(pick(rng));
    std::sort(out.anchors.begin(), out.anchors.end());
    out.points = radix_windows(out.anchors, window, params);
    out.attempts = attempt;
    if (!options.verify) return out;
    GoodBoxReport report = meets_all_good_boxes(out.points, n, params);
    if (report.all_met) {
      out.verified = true;
      return out;
    }
    last_miss = report.first_missed;
  }
  std::string where;
  if (last_miss) {
    for (std::size_t i = 0; i < params.d; ++i)
      where += " axis" + std::to_string(i) + "(a=" + std::to_string(last_miss->B.a[i]) +
               ",k=" + std::to_string(last_miss->B.k[i]) + ",b=" + std::to_string(last_miss->b[i]) +
               ",c=" + std::to_string(last_miss->c[i]) + ")";
  }
  throw ResourceLimit("stage 1 missed a good box after " + std::to_string(attempts) + " draws:" + where);
}

PointSet stage2(const PointSet& P, const ConstructionParams& params) {
  if (!P.is_exact()) throw PreconditionError("stage 2 needs exact coordinates");
  if (!P.empty() && P.dimension() != params.d) throw DimensionMismatch("set dimension differs from d");
  const std::size_t d = params.d;
  std::vector<Rational> v(d), lo(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t p = params.primes[i];
    v[i] = Rational(BigInt(1), BigInt(p) * (p - 1));
    lo[i] = Rational(BigInt(1), BigInt(p));
  }
  std::vector<Rational> flat;
  std::vector<Rational> y(d);
  for (std::size_t r = 0; r <= d; ++r) {
    for (std::size_t j = 0; j < P.size(); ++j) {
      auto x = P.exact_point(j);
      bool keep = true;
      for (std::size_t i = 0; i < d && keep; ++i) {
        y[i] = x[i] + 2 * r * v[i];
        keep = y[i] >= lo[i] && y[i] <= 1;
      }
      if (!keep) continue;
      for (std::size_t i = 0; i < d; ++i) {
        const std::uint64_t p = params.primes[i];
        flat.push_back((y[i] * p - 1) / (p - 1));
      }
    }
  }
  return PointSet::from_exact(d, std::move(flat), Space::cube).deduplicated();
}

Rational stage2_guarantee(std::uint64_t n, const ConstructionParams& params) {
  Rational g(BigInt(1), BigInt(n));
  for (auto p : params.primes) g *= Rational(BigInt(p), BigInt(p - 1));
  return g;
}

Construction hh_modified(std::uint64_t n, const ConstructionParams& params, std::uint64_t seed,
                         const Stage1Options& options) {
  params.validate();
  Construction out;
  out.n_requested = n;
  out.n_construction = params.round_down_n(n);
  if (out.n_construction == 0)
    throw PreconditionError("n = " + std::to_string(n) + " is below the smallest valid size " +
                            params.n_modulus().str());
  Stage1Result s1 = stage1(out.n_construction, params, seed, options);
  out.verified = s1.verified;
  out.points = stage2(s1.points, params);
  out.guarantee = stage2_guarantee(out.n_construction, params);
  return out;
}

PointSet random_points(std::size_t n, std::size_t d, std::uint64_t seed) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  std::mt19937_64 rng(seed);
  const BigInt den = BigInt(1) << 32;
  std::vector<Rational> flat;
  flat.reserve(n * d);
  for (std::size_t j = 0; j < n * d; ++j) flat.emplace_back(BigInt(rng() >> 32), den);
  return PointSet::from_exact(d, std::move(flat), Space::cube);
}

PointSet grid_points(std::size_t m, std::size_t d) {
  if (d == 0 || m == 0) throw Error(ErrorCategory::invalid_argument, "grid needs m, d > 0");
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= m;
  std::vector<Rational> flat;
  flat.reserve(total * d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = 0; i < d; ++i) {
      flat.emplace_back(BigInt(2 * (rest % m) + 1), BigInt(2 * m));
      rest /= m;
    }
  }
  return PointSet::from_exact(d, std::move(flat), Space::cube);
}

PointSet halton_points(std::size_t n, std::size_t d) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  std::vector<Rational> flat;
  flat.reserve(n * d);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 1; i <= d; ++i) flat.push_back(digit_reverse(static_cast<std::uint64_t>(j), nth_prime(i)));
  return PointSet::from_exact(d, std::move(flat), Space::cube);
}

}  // namespace disperse
