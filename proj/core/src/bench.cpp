#include "disperse/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "disperse/box_finder.hpp"
#include "disperse/construction.hpp"
#include "disperse/derandomizer.hpp"
#include "disperse/oracle.hpp"

namespace disperse {

double theorem3_constant(std::size_t d) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "dimension must be positive");
  WeightSpec w = d == 2 ? weight_presets::two_level_best() : weight_presets::two_level_corner(d);
  return w.R0 * std::exp(-w.mass() / (2.0 * static_cast<double>(d)));
}

double theorem1_bound_clamped(std::size_t d, std::uint64_t n) {
  if (d == 0 || n == 0) return 0.0;
  return std::max(0.0, theorem1_bound(d, n));
}

double upper_construction_bound(std::size_t d, std::uint64_t n) {
  if (d == 0 || n == 0) throw Error(ErrorCategory::invalid_argument, "d and n must be positive");
  const double dd = static_cast<double>(d);
  return 8000.0 * dd * dd * std::log(dd) / static_cast<double>(n);
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& v, std::size_t line) {
  if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("expected a non-negative integer, got '" + v + "'", line);
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ParseError("integer out of range: " + v, line);
  }
}

BenchRun parse_run(const std::string& value, std::size_t line) {
  std::istringstream ss(value);
  BenchRun run;
  if (!(ss >> run.construction)) throw ParseError("run needs a construction name", line);
  static const std::vector<std::string> known = {"random", "grid", "halton", "hh-modified", "derand"};
  if (std::find(known.begin(), known.end(), run.construction) == known.end())
    throw ParseError("unknown construction '" + run.construction + "'", line);
  bool has_d = false, has_n = false;
  std::string tok;
  while (ss >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'", line);
    std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
    if (k == "d") {
      run.d = parse_u64(v, line);
      has_d = true;
    } else if (k == "n") {
      run.n = parse_u64(v, line);
      has_n = true;
    } else if (k == "seed") {
      run.seed = parse_u64(v, line);
    } else if (k == "preset") {
      try {
        run.preset = parse_preset(v);
      } catch (const Error& e) {
        throw ParseError(e.what(), line);
      }
    } else {
      throw ParseError("unknown run field '" + k + "'", line);
    }
  }
  if (!has_d || !has_n) throw ParseError("run needs d= and n=", line);
  if (run.d == 0) throw ParseError("d must be positive", line);
  return run;
}

}  // namespace

BenchConfig parse_bench_config(std::istream& in) {
  BenchConfig cfg;
  bool has_version = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
    if (key == "version") {
      if (has_version) throw ParseError("duplicate version", line);
      if (value != "1") throw ParseError("unsupported config version '" + value + "'", line);
      has_version = true;
    } else if (!has_version) {
      throw ParseError("the first entry must be 'version = 1'", line);
    } else if (key == "node_budget") {
      cfg.node_budget = parse_u64(value, line);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<unsigned>(parse_u64(value, line));
    } else if (key == "run") {
      cfg.runs.push_back(parse_run(value, line));
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!has_version) throw ParseError("missing 'version = 1'", line);
  return cfg;
}

BenchConfig read_bench_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCategory::io, "cannot open " + path.string());
  return parse_bench_config(in);
}

PointSet bench_points(const BenchRun& run) {
  auto need_seed = [&] {
    if (!run.seed) throw Error(ErrorCategory::invalid_argument, run.construction + " needs a seed");
    return *run.seed;
  };
  if (run.construction == "random") return random_points(run.n, run.d, need_seed());
  if (run.construction == "halton") return halton_points(run.n, run.d);
  if (run.construction == "grid") {
    auto m = static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(run.n), 1.0 / run.d)));
    std::size_t total = 1;
    for (std::size_t i = 0; i < run.d; ++i) total *= m;
    if (m == 0 || total != run.n)
      throw Error(ErrorCategory::invalid_argument, "grid needs n = m^d, got n = " + std::to_string(run.n));
    return grid_points(m, run.d);
  }
  ConstructionParams params = ConstructionParams::from_preset(run.preset, run.d);
  if (run.construction == "hh-modified") return hh_modified(run.n, params, need_seed()).points;
  if (run.construction == "derand") return derandomized_construction(run.n, params).points;
  throw Error(ErrorCategory::invalid_argument, "unknown construction " + run.construction);
}

BenchRow run_bench_row(const BenchRun& run, const BenchConfig& config) {
  PointSet P = bench_points(run);
  BenchRow row;
  row.construction = run.construction;
  row.d = run.d;
  row.n = P.size();
  row.seed = run.seed;
  try {
    OracleOptions opt;
    opt.node_budget = config.node_budget;
    row.measured_volume = to_double(largest_empty_box<Rational>(P, opt).volume);
    row.method = "exact";
  } catch (const ResourceLimit&) {
    row.measured_volume = 0.0;
    row.method = "slab";
    const double slab = box_volume(trivial_slab<double>(P));
    const WeightSpec w = weight_presets::simple_default(run.d);
    if (w.R0 <= static_cast<double>(P.size())) {
      CertifiedBox cb = find_empty_box(P, default_finder_params(w, run.d, run.seed.value_or(0)));
      row.measured_volume = cb.volume;
      row.method = "finder";
    }
    if (slab > row.measured_volume) {
      row.measured_volume = slab;
      row.method = "slab";
    }
  }
  const std::uint64_t n = std::max<std::uint64_t>(row.n, 1);
  row.scaled = row.measured_volume * static_cast<double>(n);
  row.theorem1_bound = theorem1_bound_clamped(run.d, n);
  row.theorem3_target = theorem3_constant(run.d);
  row.upper_construction_bound = upper_construction_bound(run.d, n);
  return row;
}

std::string bench_csv_header() {
  return "construction,d,n,seed,measured_volume,scaled,theorem1_bound,theorem3_target,"
         "upper_construction_bound,method";
}

std::string bench_csv_line(const BenchRow& row) {
  char buf[512];
  // theorem3_target is truncated, not rounded, to five decimals.
  const double t3 = std::floor(row.theorem3_target * 1e5) / 1e5;
  std::snprintf(buf, sizeof buf, "%s,%zu,%llu,%s,%.10g,%.6f,%.10g,%.5f,%.10g,%s", row.construction.c_str(), row.d,
                static_cast<unsigned long long>(row.n), row.seed ? std::to_string(*row.seed).c_str() : "",
                row.measured_volume, row.scaled, row.theorem1_bound, t3, row.upper_construction_bound,
                row.method.c_str());
  return buf;
}

std::vector<BenchRow> run_bench(const BenchConfig& config, std::ostream& csv) {
  const std::size_t total = config.runs.size();
  std::vector<BenchRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  unsigned jobs = config.jobs ? config.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(total, 1)));
  std::mutex mu;
  std::size_t next = 0;
  auto worker = [&] {
    while (true) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next == total) return;
        i = next++;
      }
      try {
        rows[i] = run_bench_row(config.runs[i], config);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  csv << bench_csv_header() << '\n';
  for (const auto& r : rows) csv << bench_csv_line(r) << '\n';
  return rows;
}

}  // namespace disperse
