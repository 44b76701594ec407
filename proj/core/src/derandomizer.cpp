#include "disperse/derandomizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "disperse/construction.hpp"

namespace disperse {

ResidueSet solve_system(const SystemTuple& t, const ConstructionParams& params) {
  const std::size_t d = params.d;
  if (t.alpha.size() != d || t.delta.size() != d || t.b.size() != d || t.c.size() != d)
    throw DimensionMismatch("system tuple dimension differs from d");
  ResidueSet L;
  L.period = params.gamma_pow_u64(params.s);
  std::vector<std::uint64_t> m(d);
  for (std::size_t i = 0; i < d; ++i) m[i] = ipow(params.primes[i], params.s);
  for (std::uint64_t k = 0; k < L.period; ++k) {
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      std::uint64_t v = (t.alpha[i] + (k % m[i]) * t.delta[i]) % m[i];
      std::uint64_t r = reverse_digits(v, params.primes[i], params.s);
      ok = t.b[i] <= r && r < t.c[i];
    }
    if (ok) L.members.push_back(k);
  }
  return L;
}

std::vector<ResidueSet> enumerate_L_prime(const ConstructionParams& params, std::uint64_t max_sets) {
  params.validate();
  const std::size_t d = params.d;
  const std::uint64_t period = params.gamma_pow_u64(params.s);

  // The condition on axis i depends on k mod p_i^s only, so each axis
  // contributes a set T_i of residues and L is their CRT product.
  std::vector<std::vector<std::vector<std::uint64_t>>> per_axis(d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::uint64_t p = params.primes[i];
    const std::uint64_t m = ipow(p, params.s);
    if (static_cast<double>(m) * m * (m + 1) * (m + 1) * m > 5e9)
      throw ResourceLimit("residue enumeration for p = " + std::to_string(p) + " is too large");
    std::vector<std::uint64_t> rev(m);
    for (std::uint64_t v = 0; v < m; ++v) rev[v] = reverse_digits(v, p, params.s);
    std::set<std::vector<std::uint64_t>> sets;
    std::vector<std::uint64_t> T;
    for (std::uint64_t alpha = 0; alpha < m; ++alpha)
      for (std::uint64_t delta = 0; delta < m; ++delta)
        for (std::uint64_t b = 0; b <= m; ++b)
          for (std::uint64_t c = 0; c <= m; ++c) {
            T.clear();
            for (std::uint64_t t = 0; t < m; ++t) {
              std::uint64_t r = rev[(alpha + t * delta) % m];
              if (b <= r && r < c) T.push_back(t);
            }
            sets.insert(T);
          }
    per_axis[i].assign(sets.begin(), sets.end());
  }

  std::set<ResidueSet> out;
  std::vector<std::size_t> choice(d, 0);
  std::vector<std::uint64_t> m(d);
  for (std::size_t i = 0; i < d; ++i) m[i] = ipow(params.primes[i], params.s);
  std::vector<std::vector<char>> member(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) {
      member[i].assign(m[i], 0);
      for (auto t : per_axis[i][choice[i]]) member[i][t] = 1;
    }
    ResidueSet L;
    L.period = period;
    for (std::uint64_t k = 0; k < period; ++k) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) ok = member[i][k % m[i]];
      if (ok) L.members.push_back(k);
    }
    out.insert(std::move(L));
    if (out.size() > max_sets) throw ResourceLimit("too many residue sets");
    std::size_t i = 0;
    while (i < d && choice[i] + 1 == per_axis[i].size()) choice[i++] = 0;
    if (i == d) break;
    ++choice[i];
  }
  return {out.begin(), out.end()};
}

RepresentativeSpace representative_space(const ConstructionParams& params) {
  params.validate();
  RepresentativeSpace sp;
  sp.a_step = 2 * params.gamma_pow_u64(params.e_D - params.e_A);
  sp.d_floor = 2 * params.gamma_pow_u64(params.e_D - params.s) - 2;
  sp.d_max = 8 * params.gamma_pow_u64(params.e_D);
  sp.domain = 2 * params.gamma_pow_u64(params.e_D + params.e_X);
  sp.window = params.gamma_pow_u64(params.e_D - params.e_W);
  sp.period = params.gamma_pow_u64(params.s);
  sp.min_size = 1;
  if (params.e_X >= params.s && params.gamma_pow(params.e_X - params.s) >= 16) {
    std::uint64_t g = params.gamma_pow_u64(params.e_X);
    sp.min_size = (g + 15) / 16 + 1;
  }
  return sp;
}

std::uint64_t representative_size(std::uint64_t A, std::uint64_t D, const ResidueSet& L, std::uint64_t domain) {
  if (A >= domain || L.members.empty()) return 0;
  std::uint64_t K = (domain - A + D - 1) / D;
  std::uint64_t full = K / L.period, rem = K % L.period;
  auto partial = std::lower_bound(L.members.begin(), L.members.end(), rem) - L.members.begin();
  return full * L.members.size() + static_cast<std::uint64_t>(partial);
}

namespace {

template <class F>
void for_each_element(const Representative& rep, const RepresentativeTable& table, F&& fn) {
  const auto& L = table.L_prime[rep.L];
  const std::uint64_t P = L.period, dom = table.space.domain;
  for (std::uint64_t base = 0;; base += P) {
    for (auto l : L.members) {
      std::uint64_t y = rep.A + (base + l) * static_cast<std::uint64_t>(rep.D);
      if (y >= dom) return;
      fn(y);
    }
  }
}

}  // namespace

std::vector<std::uint64_t> representative_elements(const Representative& rep, const RepresentativeTable& table) {
  std::vector<std::uint64_t> out;
  for_each_element(rep, table, [&](std::uint64_t y) { out.push_back(y); });
  return out;
}

bool window_hits(const Representative& rep, std::uint64_t x, const RepresentativeTable& table) {
  const auto& L = table.L_prime[rep.L];
  const std::uint64_t A = rep.A, D = rep.D;
  std::uint64_t k = x <= A ? 0 : (x - A + D - 1) / D;
  for (std::uint64_t y = A + k * D; y < x + table.space.window && y < table.space.domain; y += D, ++k)
    if (L.contains(k)) return true;
  return false;
}

RepresentativeTable enumerate_representatives(const ConstructionParams& params, std::uint64_t max_reps) {
  RepresentativeTable table;
  table.space = representative_space(params);
  const auto& sp = table.space;
  if (sp.d_max > std::numeric_limits<std::uint32_t>::max())
    throw ResourceLimit("representative steps exceed 32 bits");
  table.L_prime = enumerate_L_prime(params);
  if (table.L_prime.size() > std::numeric_limits<std::uint32_t>::max())
    throw ResourceLimit("too many residue sets");
  for (std::uint64_t D = sp.d_floor + 1; D <= sp.d_max; ++D) {
    if (D % 2 != 0) continue;
    for (std::uint64_t A = 0; A < D; A += sp.a_step)
      for (std::size_t l = 0; l < table.L_prime.size(); ++l) {
        if (representative_size(A, D, table.L_prime[l], sp.domain) < sp.min_size) continue;
        if (table.reps.size() >= max_reps) throw ResourceLimit("representative budget exhausted");
        table.reps.push_back({static_cast<std::uint32_t>(A), static_cast<std::uint32_t>(D),
                              static_cast<std::uint32_t>(l)});
      }
  }
  return table;
}

Selection select_X_prime(const RepresentativeTable& table, const ConstructionParams& params,
                         SelectionMethod method) {
  Selection out;
  out.budget = params.sample_count();
  const auto& sp = table.space;
  const std::uint64_t dom = sp.domain, w = sp.window;
  std::vector<std::uint32_t> unhit(table.reps.size());
  for (std::size_t r = 0; r < unhit.size(); ++r) unhit[r] = static_cast<std::uint32_t>(r);

  auto anchor_range = [&](std::uint64_t y) {
    std::uint64_t lo = y + 1 >= w ? y + 1 - w : 0;
    return std::pair(lo, y);
  };

  std::vector<std::int64_t> diff(dom + 1, 0);
  if (method == SelectionMethod::greedy)
    for (const auto& rep : table.reps)
      for_each_element(rep, table, [&](std::uint64_t y) {
        auto [lo, hi] = anchor_range(y);
        ++diff[lo];
        --diff[hi + 1];
      });

  std::vector<double> q;
  if (method == SelectionMethod::potential) {
    q.resize(table.reps.size());
    for (std::size_t r = 0; r < table.reps.size(); ++r) {
      std::uint64_t anchors = 0;
      for_each_element(table.reps[r], table, [&](std::uint64_t y) {
        auto [lo, hi] = anchor_range(y);
        anchors += hi - lo + 1;
      });
      q[r] = static_cast<double>(anchors) / static_cast<double>(dom);
    }
  }

  std::vector<double> wdiff;
  while (!unhit.empty() && out.anchors.size() < out.budget) {
    out.unhit_trace.push_back(unhit.size());
    std::uint64_t best_x = 0;
    if (method == SelectionMethod::greedy) {
      std::int64_t run = 0, best = 0;
      for (std::uint64_t x = 0; x < dom; ++x) {
        run += diff[x];
        if (run > best) {
          best = run;
          best_x = x;
        }
      }
      if (best == 0) break;
    } else {
      const double left = static_cast<double>(out.budget - out.anchors.size());
      double top = -std::numeric_limits<double>::infinity();
      for (auto r : unhit) top = std::max(top, (left - 1) * std::log1p(-std::min(q[r], 1.0 - 1e-15)));
      wdiff.assign(dom + 1, 0.0);
      for (auto r : unhit) {
        double weight = std::exp((left - 1) * std::log1p(-std::min(q[r], 1.0 - 1e-15)) - top);
        for_each_element(table.reps[r], table, [&](std::uint64_t y) {
          auto [lo, hi] = anchor_range(y);
          wdiff[lo] += weight;
          wdiff[hi + 1] -= weight;
        });
      }
      double run = 0.0, best = 0.0;
      for (std::uint64_t x = 0; x < dom; ++x) {
        run += wdiff[x];
        if (run > best * (1.0 + 1e-12)) {
          best = run;
          best_x = x;
        }
      }
      if (!(best > 0.0)) break;
    }
    out.anchors.push_back(best_x);
    for (std::size_t j = 0; j < unhit.size();) {
      const auto& rep = table.reps[unhit[j]];
      if (!window_hits(rep, best_x, table)) {
        ++j;
        continue;
      }
      if (method == SelectionMethod::greedy)
        for_each_element(rep, table, [&](std::uint64_t y) {
          auto [lo, hi] = anchor_range(y);
          --diff[lo];
          ++diff[hi + 1];
        });
      unhit[j] = unhit.back();
      unhit.pop_back();
    }
  }
  out.unhit_trace.push_back(unhit.size());
  out.complete = unhit.empty();
  std::sort(out.anchors.begin(), out.anchors.end());
  return out;
}

PointSet derandomized_stage1(std::uint64_t n, const std::vector<std::uint64_t>& anchors,
                             const ConstructionParams& params) {
  params.validate();
  params.check_n(n);
  const std::uint64_t scale = n / (2 * params.gamma_pow_u64(params.e_D));
  std::vector<std::uint64_t> X;
  X.reserve(anchors.size());
  for (auto a : anchors) X.push_back(a * scale);
  return radix_windows(X, n / params.gamma_pow_u64(params.e_W), params);
}

std::uint64_t params_hash(const ConstructionParams& params) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : params.describe()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

PreprocessCache preprocess(const ConstructionParams& params, SelectionMethod method) {
  PreprocessCache cache;
  cache.params_text = params.describe();
  cache.hash = params_hash(params);
  cache.table = enumerate_representatives(params);
  Selection sel = select_X_prime(cache.table, params, method);
  if (!sel.complete)
    throw Error(ErrorCategory::internal, "anchor selection left representatives unhit within budget " +
                                             std::to_string(sel.budget));
  cache.anchors = std::move(sel.anchors);
  return cache;
}

namespace {

constexpr const char* kCacheMagic = "# disperse-preprocess v1";

std::string hex64(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace

void write_cache(const std::filesystem::path& path, const PreprocessCache& cache) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  const auto& sp = cache.table.space;
  out << kCacheMagic << '\n';
  out << "params " << cache.params_text << '\n';
  out << "hash " << hex64(cache.hash) << '\n';
  out << "space " << sp.a_step << ' ' << sp.d_floor << ' ' << sp.d_max << ' ' << sp.domain << ' ' << sp.window
      << ' ' << sp.period << ' ' << sp.min_size << '\n';
  out << "lprime " << cache.table.L_prime.size() << '\n';
  for (const auto& L : cache.table.L_prime) {
    out << L.members.size();
    for (auto k : L.members) out << ' ' << k;
    out << '\n';
  }
  out << "reps " << cache.table.reps.size() << '\n';
  for (const auto& r : cache.table.reps) out << r.A << ' ' << r.D << ' ' << r.L << '\n';
  out << "anchors " << cache.anchors.size() << '\n';
  for (std::size_t j = 0; j < cache.anchors.size(); ++j) out << (j ? " " : "") << cache.anchors[j];
  out << '\n';
  if (!out) throw Error(ErrorCategory::io, "write to '" + path.string() + "' failed");
}

PreprocessCache read_cache(const std::filesystem::path& path, const ConstructionParams& params) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCategory::io, "cannot open '" + path.string() + "'");
  std::size_t line = 0;
  auto next = [&](std::string& s) {
    if (!std::getline(in, s)) throw ParseError("unexpected end of cache", line + 1);
    ++line;
  };
  auto expect = [&](std::istringstream& ss, const char* key) {
    std::string word;
    if (!(ss >> word) || word != key) throw ParseError(std::string("expected '") + key + "'", line);
  };
  std::string s;
  next(s);
  if (s != kCacheMagic) throw ParseError("not a preprocess cache", line);

  PreprocessCache cache;
  next(s);
  if (s.rfind("params ", 0) != 0) throw ParseError("expected 'params'", line);
  cache.params_text = s.substr(7);
  next(s);
  {
    std::istringstream ss(s);
    expect(ss, "hash");
    std::string h;
    if (!(ss >> h)) throw ParseError("missing hash", line);
    try {
      cache.hash = std::stoull(h, nullptr, 16);
    } catch (const std::exception&) {
      throw ParseError("bad hash", line);
    }
  }
  if (cache.hash != params_hash(params) || cache.params_text != params.describe())
    throw Error(ErrorCategory::invalid_argument,
                "cache was built for '" + cache.params_text + "', not '" + params.describe() + "'");

  auto& sp = cache.table.space;
  next(s);
  {
    std::istringstream ss(s);
    expect(ss, "space");
    if (!(ss >> sp.a_step >> sp.d_floor >> sp.d_max >> sp.domain >> sp.window >> sp.period >> sp.min_size))
      throw ParseError("bad space line", line);
  }
  auto read_count = [&](const char* key) {
    next(s);
    std::istringstream ss(s);
    expect(ss, key);
    std::uint64_t c = 0;
    if (!(ss >> c)) throw ParseError(std::string("bad ") + key + " count", line);
    return c;
  };
  std::uint64_t nl = read_count("lprime");
  for (std::uint64_t j = 0; j < nl; ++j) {
    next(s);
    std::istringstream ss(s);
    ResidueSet L;
    L.period = sp.period;
    std::size_t m = 0;
    if (!(ss >> m)) throw ParseError("bad residue set", line);
    L.members.resize(m);
    for (auto& k : L.members)
      if (!(ss >> k)) throw ParseError("bad residue set", line);
    cache.table.L_prime.push_back(std::move(L));
  }
  std::uint64_t nr = read_count("reps");
  cache.table.reps.reserve(nr);
  for (std::uint64_t j = 0; j < nr; ++j) {
    next(s);
    std::istringstream ss(s);
    Representative r;
    if (!(ss >> r.A >> r.D >> r.L) || r.L >= nl) throw ParseError("bad representative", line);
    cache.table.reps.push_back(r);
  }
  std::uint64_t na = read_count("anchors");
  next(s);
  std::istringstream ss(s);
  cache.anchors.resize(na);
  for (auto& a : cache.anchors)
    if (!(ss >> a)) throw ParseError("bad anchor list", line);
  return cache;
}

Construction derandomized_construction(std::uint64_t n, const ConstructionParams& params,
                                       const PreprocessCache* cache) {
  params.validate();
  Construction out;
  out.n_requested = n;
  out.n_construction = params.round_down_n(n);
  if (out.n_construction == 0)
    throw PreconditionError("n = " + std::to_string(n) + " is below the smallest valid size " +
                            params.n_modulus().str());
  PreprocessCache local;
  if (!cache) {
    local = preprocess(params);
    cache = &local;
  } else if (cache->hash != params_hash(params)) {
    throw Error(ErrorCategory::invalid_argument, "cache was built for different parameters");
  }
  PointSet P = derandomized_stage1(out.n_construction, cache->anchors, params);
  out.points = stage2(P, params);
  out.guarantee = stage2_guarantee(out.n_construction, params);
  return out;
}

}  // namespace disperse
