#include "disperse/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace disperse {

namespace {

using Rank = std::uint32_t;

// Per-axis sorted distinct coordinates plus each point's rank on every axis.
// S is the coordinate scalar (double, int64 numerator over a common per-axis
// denominator, or BigInt numerator); V is the volume type.
template <class S>
struct Problem {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<std::vector<S>> values;
  std::vector<S> one;  // the value 1 on each axis
  std::vector<Rank> ranks;

  Rank rank(std::size_t i, std::size_t axis) const { return ranks[i * dim + axis]; }
};

template <class V>
struct Best {
  V volume{};
  std::vector<Rank> key;
  bool found = false;

  void consider(const V& vol, const Rank* k, std::size_t len) {
    if (!found || vol > volume || (vol == volume && earlier(k, len))) {
      volume = vol;
      key.assign(k, k + len);
      found = true;
    }
  }

  /// Keys are (lo_1, hi_1, ..., lo_d, hi_d); ties compare the last axis first.
  bool earlier(const Rank* k, std::size_t len) const {
    for (std::size_t a = len; a >= 2; a -= 2) {
      if (k[a - 2] != key[a - 2]) return k[a - 2] < key[a - 2];
      if (k[a - 1] != key[a - 1]) return k[a - 1] < key[a - 1];
    }
    return false;
  }

  /// True when a candidate bounded by `bound` cannot win or tie.
  bool beats(const V& bound) const { return found && bound < volume; }
};

class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget) : budget_(budget) {}
  void tick() {
    if (++nodes_ > budget_)
      throw ResourceLimit("oracle node budget of " + std::to_string(budget_) + " exhausted");
  }

 private:
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Cube, branch and bound over per-axis candidate pairs.

template <class S, class V>
class CubeBranchAndBound {
 public:
  CubeBranchAndBound(const Problem<S>& pr, std::uint64_t budget) : pr_(pr), counter_(budget) {
    suffix_one_.assign(pr.dim + 1, V(1));
    for (std::size_t a = pr.dim; a-- > 0;) suffix_one_[a] = suffix_one_[a + 1] * V(pr.one[a]);
    key_.assign(2 * pr.dim, 0);
  }

  Best<V> run() {
    std::vector<std::uint32_t> all(pr_.n);
    std::iota(all.begin(), all.end(), 0u);
    const std::size_t last = pr_.dim - 1;
    std::stable_sort(all.begin(), all.end(),
                     [&](auto x, auto y) { return pr_.rank(x, last) < pr_.rank(y, last); });
    recurse(0, all, V(1));
    return best_;
  }

 private:
  void recurse(std::size_t axis, const std::vector<std::uint32_t>& surv, const V& partial) {
    counter_.tick();
    const auto& v = pr_.values[axis];
    const Rank top = static_cast<Rank>(v.size() - 1);
    if (surv.empty()) {
      for (std::size_t a = axis; a < pr_.dim; ++a) {
        key_[2 * a] = 0;
        key_[2 * a + 1] = static_cast<Rank>(pr_.values[a].size() - 1);
      }
      best_.consider(partial * suffix_one_[axis], key_.data(), key_.size());
      return;
    }
    if (axis + 1 == pr_.dim) {
      // Survivors arrive sorted on this axis; every gap is a candidate side.
      Rank prev = 0;
      auto gap = [&](Rank lo, Rank hi) {
        key_[2 * axis] = lo;
        key_[2 * axis + 1] = hi;
        best_.consider(partial * V(v[hi] - v[lo]), key_.data(), key_.size());
      };
      for (auto idx : surv) {
        Rank r = pr_.rank(idx, axis);
        if (r > prev) gap(prev, r);
        prev = std::max(prev, r);
      }
      if (prev < top) gap(prev, top);
      return;
    }
    std::vector<std::uint32_t> next;
    next.reserve(surv.size());
    for (Rank lo = 0; lo < top; ++lo) {
      for (Rank hi = top; hi > lo; --hi) {
        V vol = partial * V(v[hi] - v[lo]);
        // Widths only shrink as hi decreases.
        if (best_.beats(vol * suffix_one_[axis + 1])) break;
        next.clear();
        for (auto idx : surv) {
          Rank r = pr_.rank(idx, axis);
          if (lo < r && r < hi) next.push_back(idx);
        }
        key_[2 * axis] = lo;
        key_[2 * axis + 1] = hi;
        recurse(axis + 1, next, vol);
      }
    }
  }

  const Problem<S>& pr_;
  NodeCounter counter_;
  std::vector<V> suffix_one_;
  std::vector<Rank> key_;
  Best<V> best_;
};

// ---------------------------------------------------------------------------
// Cube, d == 2: sweep every maximal empty rectangle by its bottom support.

template <class S, class V>
Best<V> cube_plane_sweep(const Problem<S>& pr, std::uint64_t budget) {
  NodeCounter counter(budget);
  Best<V> best;
  const auto& vx = pr.values[0];
  const auto& vy = pr.values[1];
  const Rank xmax = static_cast<Rank>(vx.size() - 1);
  const Rank ymax = static_cast<Rank>(vy.size() - 1);
  const S& one_y = pr.one[1];

  std::vector<std::uint32_t> order(pr.n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return std::pair(pr.rank(a, 1), pr.rank(a, 0)) < std::pair(pr.rank(b, 1), pr.rank(b, 0));
  });
  std::vector<Rank> xs(pr.n), ys(pr.n);
  for (std::size_t k = 0; k < pr.n; ++k) {
    xs[k] = pr.rank(order[k], 0);
    ys[k] = pr.rank(order[k], 1);
  }
  // First sorted index strictly above each level.
  std::vector<std::size_t> above(pr.n);
  for (std::size_t k = pr.n; k-- > 0;)
    above[k] = (k + 1 < pr.n && ys[k + 1] == ys[k]) ? above[k + 1] : k + 1;

  Rank key[4];
  auto emit = [&](Rank l, Rank r, Rank b, Rank t) {
    key[0] = l;
    key[1] = r;
    key[2] = b;
    key[3] = t;
    best.consider(V(vx[r] - vx[l]) * V(vy[t] - vy[b]), key, 4);
  };

  // Bottom face on the cube boundary y = 0.
  std::set<Rank> below;
  for (std::size_t k = 0; k < pr.n;) {
    std::size_t end = above[k];
    for (std::size_t j = k; j < end; ++j) {
      if (below.count(xs[j])) continue;
      auto it = below.upper_bound(xs[j]);
      Rank r = it == below.end() ? xmax : *it;
      Rank l = it == below.begin() ? 0 : *std::prev(it);
      emit(l, r, 0, ys[j]);
    }
    for (std::size_t j = k; j < end; ++j) below.insert(xs[j]);
    k = end;
  }
  {
    Rank prev = 0;
    for (Rank x : below) {
      if (x > prev) emit(prev, x, 0, ymax);
      prev = std::max(prev, x);
    }
    if (prev < xmax) emit(prev, xmax, 0, ymax);
  }

  // Bottom face supported by a point.
  for (std::size_t k = 0; k < pr.n; ++k) {
    counter.tick();
    const Rank px = xs[k], py = ys[k];
    const V height_cap = V(one_y - vy[py]);
    Rank l = 0, r = xmax;
    bool open_top = true;
    for (std::size_t j = above[k]; j < pr.n; ++j) {
      if (best.beats(V(vx[r] - vx[l]) * height_cap)) {
        open_top = false;
        break;
      }
      const Rank qx = xs[j];
      if (qx <= l || qx >= r) continue;
      emit(l, r, py, ys[j]);
      if (qx < px) {
        l = qx;
      } else if (qx > px) {
        r = qx;
      } else {
        open_top = false;
        break;
      }
    }
    if (open_top) emit(l, r, py, ymax);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Torus helpers.

template <class S>
S torus_length(const std::vector<S>& v, const S& one, Rank a, Rank b) {
  if (a < b) return v[b] - v[a];
  return one - v[a] + v[b];
}

inline bool torus_inside(Rank a, Rank b, Rank x) {
  if (a < b) return a < x && x < b;
  if (a > b) return x > a || x < b;
  return x != a;
}

template <class S, class V>
class TorusBranchAndBound {
 public:
  TorusBranchAndBound(const Problem<S>& pr, std::uint64_t budget) : pr_(pr), counter_(budget) {
    suffix_one_.assign(pr.dim + 1, V(1));
    for (std::size_t a = pr.dim; a-- > 0;) suffix_one_[a] = suffix_one_[a + 1] * V(pr.one[a]);
    key_.assign(2 * pr.dim, 0);
  }

  Best<V> run() {
    std::vector<std::uint32_t> all(pr_.n);
    std::iota(all.begin(), all.end(), 0u);
    const std::size_t last = pr_.dim - 1;
    std::stable_sort(all.begin(), all.end(),
                     [&](auto x, auto y) { return pr_.rank(x, last) < pr_.rank(y, last); });
    recurse(0, all, V(1));
    return best_;
  }

 private:
  void recurse(std::size_t axis, const std::vector<std::uint32_t>& surv, const V& partial) {
    counter_.tick();
    const auto& v = pr_.values[axis];
    const Rank m = static_cast<Rank>(v.size());
    if (surv.empty()) {
      for (std::size_t a = axis; a < pr_.dim; ++a) key_[2 * a] = key_[2 * a + 1] = 0;
      best_.consider(partial * suffix_one_[axis], key_.data(), key_.size());
      return;
    }
    if (axis + 1 == pr_.dim) {
      std::vector<Rank> rs;
      rs.reserve(surv.size());
      for (auto idx : surv) {
        Rank r = pr_.rank(idx, axis);
        if (rs.empty() || rs.back() != r) rs.push_back(r);
      }
      auto gap = [&](Rank a, Rank b) {
        key_[2 * axis] = a;
        key_[2 * axis + 1] = b;
        best_.consider(partial * V(torus_length(v, pr_.one[axis], a, b)), key_.data(), key_.size());
      };
      if (rs.size() == 1) {
        gap(rs[0], rs[0]);
      } else {
        for (std::size_t j = 0; j + 1 < rs.size(); ++j) gap(rs[j], rs[j + 1]);
        gap(rs.back(), rs.front());
      }
      return;
    }
    std::vector<std::uint32_t> next;
    next.reserve(surv.size());
    for (Rank a = 0; a < m; ++a) {
      // b = a, a-1, ..., 0, m-1, ..., a+1 visits lengths in decreasing order.
      for (Rank t = 0; t < m; ++t) {
        Rank b = (a + m - t) % m;
        V vol = partial * V(torus_length(v, pr_.one[axis], a, b));
        if (best_.beats(vol * suffix_one_[axis + 1])) break;
        next.clear();
        for (auto idx : surv)
          if (torus_inside(a, b, pr_.rank(idx, axis))) next.push_back(idx);
        key_[2 * axis] = a;
        key_[2 * axis + 1] = b;
        recurse(axis + 1, next, vol);
      }
    }
  }

  const Problem<S>& pr_;
  NodeCounter counter_;
  std::vector<V> suffix_one_;
  std::vector<Rank> key_;
  Best<V> best_;
};

template <class S, class V>
Best<V> torus_plane_sweep(const Problem<S>& pr, std::uint64_t budget) {
  NodeCounter counter(budget);
  Best<V> best;
  const auto& vx = pr.values[0];
  const auto& vy = pr.values[1];
  const S& one_x = pr.one[0];
  const S& one_y = pr.one[1];

  std::vector<std::uint32_t> order(pr.n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return std::pair(pr.rank(a, 1), pr.rank(a, 0)) < std::pair(pr.rank(b, 1), pr.rank(b, 0));
  });
  std::vector<Rank> xs(pr.n), ys(pr.n);
  for (std::size_t k = 0; k < pr.n; ++k) {
    xs[k] = pr.rank(order[k], 0);
    ys[k] = pr.rank(order[k], 1);
  }
  std::vector<std::size_t> level_begin(pr.n), level_end(pr.n);
  for (std::size_t k = 0; k < pr.n; ++k)
    level_begin[k] = (k > 0 && ys[k - 1] == ys[k]) ? level_begin[k - 1] : k;
  for (std::size_t k = pr.n; k-- > 0;)
    level_end[k] = (k + 1 < pr.n && ys[k + 1] == ys[k]) ? level_end[k + 1] : k + 1;

  Rank key[4];
  auto emit = [&](const V& vol, Rank a, Rank b, Rank c, Rank e) {
    key[0] = a;
    key[1] = b;
    key[2] = c;
    key[3] = e;
    best.consider(vol, key, 4);
  };

  // y-side of full length whose x-side avoids every point.
  {
    std::vector<Rank> sx(xs);
    std::sort(sx.begin(), sx.end());
    sx.erase(std::unique(sx.begin(), sx.end()), sx.end());
    if (sx.size() == 1) {
      emit(V(one_x) * V(one_y), sx[0], sx[0], 0, 0);
    } else {
      for (std::size_t j = 0; j + 1 < sx.size(); ++j)
        emit(V(vx[sx[j + 1]] - vx[sx[j]]) * V(one_y), sx[j], sx[j + 1], 0, 0);
      emit(V(torus_length(vx, one_x, sx.back(), sx.front())) * V(one_y), sx.back(), sx.front(), 0, 0);
    }
  }

  // Bottom side supported by a point p; walk upward once around the circle.
  for (std::size_t k = 0; k < pr.n; ++k) {
    counter.tick();
    const Rank px = xs[k], py = ys[k];
    bool full = true;
    Rank l = 0, r = 0;
    auto xlen = [&]() -> V { return full ? V(one_x) : V(torus_length(vx, one_x, l, r)); };
    bool closed = false;
    const std::size_t total = pr.n - (level_end[k] - level_begin[k]);
    for (std::size_t step = 0; step < total; ++step) {
      const std::size_t j = (level_end[k] + step) % pr.n;
      if (best.beats(xlen() * V(one_y))) {
        closed = true;
        break;
      }
      const Rank qx = xs[j], qy = ys[j];
      if (!full && !torus_inside(l, r, qx)) continue;
      V dy = V(torus_length(vy, one_y, py, qy));
      if (full)
        emit(V(one_x) * dy, qx, qx, py, qy);
      else
        emit(xlen() * dy, l, r, py, qy);
      if (qx == px) {
        closed = true;
        break;
      }
      if (full) {
        full = false;
        l = r = qx;
      } else if (torus_inside(l, qx, px)) {
        r = qx;
      } else {
        l = qx;
      }
    }
    if (!closed) {
      if (full)
        emit(V(one_x) * V(one_y), px, px, py, py);
      else
        emit(xlen() * V(one_y), l, r, py, py);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Problem construction.

template <class T>
struct Ranked {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<std::vector<T>> values;
  std::vector<Rank> ranks;
};

template <class T>
Ranked<T> rank_points(const PointSet& set, bool torus) {
  Ranked<T> out;
  out.dim = set.dimension();
  out.n = set.size();
  out.values.resize(out.dim);
  out.ranks.resize(out.n * out.dim);
  auto normalize = [&](T x) {
    if (torus && x >= T(1)) x -= T(1);
    return x;
  };
  for (std::size_t a = 0; a < out.dim; ++a) {
    auto& vals = out.values[a];
    vals.reserve(out.n + 2);
    if (!torus) {
      vals.push_back(T(0));
      vals.push_back(T(1));
    }
    for (std::size_t i = 0; i < out.n; ++i) vals.push_back(normalize(set.point<T>(i)[a]));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (std::size_t i = 0; i < out.n; ++i) {
      T x = normalize(set.point<T>(i)[a]);
      out.ranks[i * out.dim + a] =
          static_cast<Rank>(std::lower_bound(vals.begin(), vals.end(), x) - vals.begin());
    }
  }
  return out;
}

template <class S, class T, class F>
Problem<S> make_problem(const Ranked<T>& rk, std::vector<S> one, F&& convert) {
  Problem<S> pr;
  pr.dim = rk.dim;
  pr.n = rk.n;
  pr.ranks = rk.ranks;
  pr.one = std::move(one);
  pr.values.resize(rk.dim);
  for (std::size_t a = 0; a < rk.dim; ++a) {
    pr.values[a].reserve(rk.values[a].size());
    for (const auto& x : rk.values[a]) pr.values[a].push_back(convert(a, x));
  }
  return pr;
}

enum class Shape { cube, torus };

template <class S, class V>
Best<V> solve(const Problem<S>& pr, Shape shape, const OracleOptions& opt) {
  bool sweep = opt.method == OracleOptions::Method::plane_sweep ||
               (opt.method == OracleOptions::Method::automatic && pr.dim == 2);
  if (sweep && pr.dim != 2) throw PreconditionError("plane sweep requires d == 2");
  if (shape == Shape::cube) {
    if (sweep) return cube_plane_sweep<S, V>(pr, opt.node_budget);
    return CubeBranchAndBound<S, V>(pr, opt.node_budget).run();
  }
  if (sweep) return torus_plane_sweep<S, V>(pr, opt.node_budget);
  return TorusBranchAndBound<S, V>(pr, opt.node_budget).run();
}

// Runs the search for exact input and returns the winning key; the volume is
// recomputed from the witness by the caller.
__extension__ typedef __int128 Wide;

std::vector<Rank> solve_exact(const Ranked<Rational>& rk, Shape shape, const OracleOptions& opt) {
  std::vector<BigInt> lcm(rk.dim, BigInt(1));
  for (std::size_t a = 0; a < rk.dim; ++a)
    for (const auto& q : rk.values[a]) {
      BigInt den = denominator(q);
      lcm[a] = lcm[a] / boost::multiprecision::gcd(lcm[a], den) * den;
    }
  std::size_t bits = 0;
  bool small = true;
  for (const auto& l : lcm) {
    std::size_t b = boost::multiprecision::msb(l) + 1;
    bits += b;
    if (b > 62) small = false;
  }
  small = small && bits <= 124;

  auto numer = [&](std::size_t a, const Rational& q) { return BigInt(numerator(q) * (lcm[a] / denominator(q))); };
  if (small) {
    std::vector<std::int64_t> one;
    for (const auto& l : lcm) one.push_back(l.convert_to<std::int64_t>());
    auto pr = make_problem<std::int64_t>(rk, one, [&](std::size_t a, const Rational& q) {
      return numer(a, q).convert_to<std::int64_t>();
    });
    return solve<std::int64_t, Wide>(pr, shape, opt).key;
  }
  auto pr = make_problem<BigInt>(rk, lcm, numer);
  return solve<BigInt, BigInt>(pr, shape, opt).key;
}

std::vector<Rank> solve_real(const Ranked<double>& rk, Shape shape, const OracleOptions& opt) {
  auto pr = make_problem<double>(rk, std::vector<double>(rk.dim, 1.0),
                                 [](std::size_t, double x) { return x; });
  return solve<double, double>(pr, shape, opt).key;
}

template <class T>
std::vector<Rank> solve_any(const Ranked<T>& rk, Shape shape, const OracleOptions& opt) {
  if constexpr (std::is_same_v<T, Rational>)
    return solve_exact(rk, shape, opt);
  else
    return solve_real(rk, shape, opt);
}

void check_dimension(const PointSet& set) {
  if (set.dimension() == 0) throw PreconditionError("dimension must be positive");
}

}  // namespace

template <class T>
DispersionResult<T> largest_empty_box(const PointSet& set, const OracleOptions& options) {
  check_dimension(set);
  if (set.space() != Space::cube) throw PreconditionError("largest_empty_box expects a cube point set");
  DispersionResult<T> result;
  if (set.empty()) {
    result.witness = AxisBox<T>::unit(set.dimension());
  } else {
    auto rk = rank_points<T>(set, false);
    auto key = solve_any(rk, Shape::cube, options);
    for (std::size_t a = 0; a < rk.dim; ++a)
      result.witness.axes.push_back({rk.values[a][key[2 * a]], rk.values[a][key[2 * a + 1]], Openness::open});
  }
  result.volume = box_volume(result.witness);
  result.scaled = static_cast<double>(set.size()) * static_cast<double>(result.volume);
  if (!inside_unit_cube(result.witness) || !box_is_empty(result.witness, set))
    throw Error(ErrorCategory::internal, "oracle witness failed validation");
  return result;
}

template <class T>
ToroidalDispersionResult<T> largest_empty_toroidal_box(const PointSet& set, const OracleOptions& options) {
  check_dimension(set);
  if (set.space() != Space::torus)
    throw PreconditionError("largest_empty_toroidal_box expects a torus point set");
  ToroidalDispersionResult<T> result;
  if (set.empty()) {
    result.witness.axes.assign(set.dimension(), ToroidalInterval<T>{T(0), T(0)});
  } else {
    auto rk = rank_points<T>(set, true);
    auto key = solve_any(rk, Shape::torus, options);
    for (std::size_t a = 0; a < rk.dim; ++a)
      result.witness.axes.push_back({rk.values[a][key[2 * a]], rk.values[a][key[2 * a + 1]]});
  }
  result.volume = box_volume(result.witness);
  result.scaled = static_cast<double>(set.size()) * static_cast<double>(result.volume);
  if (!box_is_empty(result.witness, set))
    throw Error(ErrorCategory::internal, "toroidal oracle witness failed validation");
  return result;
}

template <class T>
AxisBox<T> trivial_slab(const PointSet& set) {
  const std::size_t d = set.dimension();
  if (d == 0) throw PreconditionError("dimension must be positive");
  AxisBox<T> box = AxisBox<T>::unit(d);
  if (set.empty()) return box;
  T best_gap(-1);
  std::size_t best_axis = 0;
  T best_lo(0), best_hi(1);
  for (std::size_t a = 0; a < d; ++a) {
    std::vector<T> xs{T(0), T(1)};
    for (std::size_t i = 0; i < set.size(); ++i) xs.push_back(set.point<T>(i)[a]);
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
      T gap = xs[k + 1] - xs[k];
      if (gap > best_gap) {
        best_gap = gap;
        best_axis = a;
        best_lo = xs[k];
        best_hi = xs[k + 1];
      }
    }
  }
  box.axes[best_axis] = {best_lo, best_hi, Openness::open};
  return box;
}

template DispersionResult<Rational> largest_empty_box<Rational>(const PointSet&, const OracleOptions&);
template DispersionResult<double> largest_empty_box<double>(const PointSet&, const OracleOptions&);
template ToroidalDispersionResult<Rational> largest_empty_toroidal_box<Rational>(const PointSet&,
                                                                                 const OracleOptions&);
template ToroidalDispersionResult<double> largest_empty_toroidal_box<double>(const PointSet&,
                                                                             const OracleOptions&);
template AxisBox<Rational> trivial_slab<Rational>(const PointSet&);
template AxisBox<double> trivial_slab<double>(const PointSet&);

}  // namespace disperse
