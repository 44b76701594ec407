#include "disperse/good_boxes.hpp"

#include <algorithm>
#include <limits>

namespace disperse {

bool is_p_bad(const Interval<Rational>& iv, std::uint64_t p) {
  Rational len = iv.hi - iv.lo;
  if (len <= 0) return false;
  // Only the finest admissible grid matters: it contains the coarser ones.
  BigInt pk = BigInt(p) * p;
  if (len * pk >= 2) return false;
  unsigned K = 0;
  while (len * (pk * p) < 2) {
    pk *= p;
    ++K;
  }
  BigInt grid = pow(BigInt(p), K + 1);
  BigInt a = ceil(iv.lo * grid);
  return Rational(a) < iv.hi * grid;
}

Interval<Rational> PInterval::interval(std::uint64_t p) const {
  BigInt den = pow(BigInt(p), level);
  return {Rational(a, den), Rational(b, den), Openness::half_open};
}

PInterval well_shrunk_subinterval(const Interval<Rational>& iv, std::uint64_t p) {
  Rational len = iv.hi - iv.lo;
  if (!(iv.lo >= 0 && len > 0 && iv.hi <= 1))
    throw PreconditionError("well-shrunk subinterval needs 0 <= s < u <= 1");
  unsigned k = 0;
  BigInt pk = 1;
  while (len * pk < 1) {
    pk *= p;
    ++k;
  }
  PInterval out;
  out.level = k + 1;
  BigInt grid = pk * p;
  out.a = ceil(iv.lo * grid);
  out.b = floor(iv.hi * grid);
  return out;
}

GoodBoxSearch contains_good_box(const ExactBox& alpha_in, std::uint64_t n, const ConstructionParams& params) {
  if (alpha_in.dimension() != params.d) throw DimensionMismatch("box dimension differs from d");
  if (!inside_unit_cube(alpha_in)) throw PreconditionError("box must lie in the unit cube");
  const Rational target(BigInt(1), BigInt(n));
  Rational vol = box_volume(alpha_in);
  if (vol < target) throw PreconditionError("box volume is below 1/n");

  ExactBox alpha = alpha_in;
  if (vol > target) {
    Rational rest = 1;
    for (std::size_t i = 0; i + 1 < params.d; ++i) rest *= alpha.axes[i].length();
    auto& last = alpha.axes.back();
    last.hi = last.lo + target / rest;
  }

  GoodBoxSearch out;
  out.alpha = alpha;
  GoodPair pair;
  for (std::size_t i = 0; i < params.d; ++i) {
    const std::uint64_t p = params.primes[i];
    PInterval w = well_shrunk_subinterval(alpha.axes[i], p);
    out.beta.axes.push_back(w.interval(p));
    // Smallest canonical interval around [a, b) at this level.
    unsigned j = 0;
    BigInt pj = 1;
    while (w.a / pj != (w.b - 1) / pj) {
      pj *= p;
      ++j;
    }
    BigInt prefix = w.a / pj;
    if (j > params.s) {
      if (!out.failing_axis) out.failing_axis = i;
      continue;
    }
    BigInt scale = pow(BigInt(p), params.s - j);
    pair.B.a.push_back(prefix.convert_to<std::uint64_t>());
    pair.B.k.push_back(w.level - j);
    pair.b.push_back(((w.a - prefix * pj) * scale).convert_to<std::uint64_t>());
    pair.c.push_back(((w.b - prefix * pj) * scale).convert_to<std::uint64_t>());
  }
  if (out.failing_axis) return out;
  if (pair.beta_volume(params) < Rational(BigInt(1), BigInt(4) * n)) {
    out.volume_too_small = true;
    return out;
  }
  out.pair = std::move(pair);
  return out;
}

namespace {

struct OffsetTuple {
  std::vector<std::uint64_t> b, c;
  std::uint64_t product = 1;
};

void enumerate_offsets(const std::vector<std::uint64_t>& ps, std::size_t axis, OffsetTuple& cur,
                       std::vector<OffsetTuple>& out) {
  if (axis == ps.size()) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t b = 0; b < ps[axis]; ++b)
    for (std::uint64_t c = b + 1; c <= ps[axis]; ++c) {
      cur.b.push_back(b);
      cur.c.push_back(c);
      std::uint64_t saved = cur.product;
      cur.product *= c - b;
      enumerate_offsets(ps, axis + 1, cur, out);
      cur.product = saved;
      cur.b.pop_back();
      cur.c.pop_back();
    }
}

// d-dimensional inclusive prefix sums over a mixed-radix grid.
class PrefixGrid {
 public:
  explicit PrefixGrid(std::vector<std::uint64_t> dims) : dims_(std::move(dims)) {
    stride_.assign(dims_.size(), 1);
    for (std::size_t i = 1; i < dims_.size(); ++i) stride_[i] = stride_[i - 1] * dims_[i - 1];
    size_ = stride_.back() * dims_.back();
    cells_.assign(size_, 0);
  }

  void clear() { std::fill(cells_.begin(), cells_.end(), 0); }
  void add(std::uint64_t index) { ++cells_[index]; }

  void finish() {
    for (std::size_t a = 0; a < dims_.size(); ++a)
      for (std::uint64_t idx = 0; idx < size_; ++idx)
        if ((idx / stride_[a]) % dims_[a] != 0) cells_[idx] += cells_[idx - stride_[a]];
  }

  /// Number of entries in prod [b_i, c_i).
  std::int64_t count(const std::vector<std::uint64_t>& b, const std::vector<std::uint64_t>& c) const {
    const std::size_t d = dims_.size();
    std::int64_t total = 0;
    for (std::uint64_t mask = 0; mask < (1ULL << d); ++mask) {
      std::uint64_t idx = 0;
      int sign = 1;
      bool skip = false;
      for (std::size_t a = 0; a < d; ++a) {
        if (mask >> a & 1) {
          if (b[a] == 0) {
            skip = true;
            break;
          }
          idx += (b[a] - 1) * stride_[a];
          sign = -sign;
        } else {
          idx += (c[a] - 1) * stride_[a];
        }
      }
      if (!skip) total += sign * static_cast<std::int64_t>(cells_[idx]);
    }
    return total;
  }

  std::uint64_t index(const std::vector<std::uint64_t>& q) const {
    std::uint64_t idx = 0;
    for (std::size_t a = 0; a < q.size(); ++a) idx += q[a] * stride_[a];
    return idx;
  }

 private:
  std::vector<std::uint64_t> dims_, stride_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> cells_;
};

}  // namespace

GoodBoxReport meets_all_good_boxes(const PointSet& set, std::uint64_t n, const ConstructionParams& params,
                                   std::uint64_t max_pairs) {
  params.validate();
  params.check_n(n);
  if (!set.empty() && set.dimension() != params.d) throw DimensionMismatch("set dimension differs from d");
  const std::size_t d = params.d;
  const BigInt N = n;
  const BigInt four_n = 4 * N;
  const BigInt gs = params.gamma_pow(params.s);
  const BigInt dmin = N / gs;

  std::vector<unsigned> kmax(d);
  std::vector<std::uint64_t> ps(d);
  std::vector<std::vector<std::uint64_t>> powers(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t p = params.primes[i];
    ps[i] = ipow(p, params.s);
    BigInt pk = 1;
    while (pk * p <= four_n) {
      pk *= p;
      ++kmax[i];
    }
    if (pow(BigInt(p), kmax[i] + params.s) > std::numeric_limits<std::uint64_t>::max() / p)
      throw ResourceLimit("good-box enumeration exceeds 64-bit digit arithmetic");
    for (unsigned e = 0; e <= kmax[i] + params.s; ++e) powers[i].push_back(ipow(p, e));
  }

  // floor(x_i p_i^(kmax_i + s)) once per point and axis.
  const std::size_t m = set.size();
  std::vector<std::uint64_t> fine(m * d);
  for (std::size_t j = 0; j < m; ++j) {
    auto x = set.exact_point(j);
    for (std::size_t i = 0; i < d; ++i)
      fine[j * d + i] = floor(x[i] * powers[i][kmax[i] + params.s]).convert_to<std::uint64_t>();
  }

  std::vector<OffsetTuple> offsets;
  {
    OffsetTuple cur;
    enumerate_offsets(ps, 0, cur, offsets);
  }

  GoodBoxReport report;
  PrefixGrid grid(ps);
  std::vector<unsigned> k(d, 0);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> keyed;  // (box, cell)
  std::vector<std::uint64_t> q(d);

  // Odometer over level vectors k.
  while (true) {
    BigInt D = 1;
    for (std::size_t i = 0; i < d; ++i) D *= powers[i][k[i]];
    if (D >= dmin && D <= four_n) {
      const BigInt dg = D * gs;
      std::vector<const OffsetTuple*> valid;
      for (const auto& o : offsets)
        if (four_n * o.product >= dg && N * o.product <= dg) valid.push_back(&o);
      if (!valid.empty()) {
        const std::uint64_t boxes = D.convert_to<std::uint64_t>();
        keyed.clear();
        for (std::size_t j = 0; j < m; ++j) {
          std::uint64_t box = 0, mult = 1;
          bool inside = true;
          for (std::size_t i = 0; i < d; ++i) {
            std::uint64_t t = fine[j * d + i] / powers[i][kmax[i] - k[i]];
            std::uint64_t a = t / ps[i];
            if (a >= powers[i][k[i]]) {
              inside = false;
              break;
            }
            q[i] = t % ps[i];
            box += a * mult;
            mult *= powers[i][k[i]];
          }
          if (inside) keyed.emplace_back(box, grid.index(q));
        }
        std::sort(keyed.begin(), keyed.end());
        std::size_t pos = 0;
        for (std::uint64_t box = 0; box < boxes; ++box) {
          ++report.canonical_boxes;
          grid.clear();
          while (pos < keyed.size() && keyed[pos].first == box) grid.add(keyed[pos++].second);
          grid.finish();
          for (const auto* o : valid) {
            if (++report.pairs_checked > max_pairs) throw ResourceLimit("good-pair budget exhausted");
            if (grid.count(o->b, o->c) > 0) continue;
            GoodPair miss;
            std::uint64_t rest = box;
            for (std::size_t i = 0; i < d; ++i) {
              miss.B.a.push_back(rest % powers[i][k[i]]);
              rest /= powers[i][k[i]];
              miss.B.k.push_back(k[i]);
            }
            miss.b = o->b;
            miss.c = o->c;
            report.all_met = false;
            report.first_missed = std::move(miss);
            return report;
          }
        }
      }
    }
    std::size_t i = 0;
    while (i < d && k[i] == kmax[i]) k[i++] = 0;
    if (i == d) break;
    ++k[i];
  }
  return report;
}

}  // namespace disperse
