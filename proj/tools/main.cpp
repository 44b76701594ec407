#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "disperse/bench.hpp"
#include "disperse/box_finder.hpp"
#include "disperse/construction.hpp"
#include "disperse/derandomizer.hpp"
#include "disperse/good_boxes.hpp"
#include "disperse/oracle.hpp"
#include "disperse/pointset_io.hpp"
#include "disperse/toroidal.hpp"

using json = nlohmann::ordered_json;
using namespace disperse;

namespace {

constexpr int kVerificationFailed = 1;

std::string truncated(double x, int digits) {
  const double scale = std::pow(10.0, digits);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, std::floor(x * scale) / scale);
  return buf;
}

template <class T>
json coord(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return format_rational(x);
  else
    return x;
}

template <class T>
json box_json(const AxisBox<T>& box) {
  json axes = json::array();
  for (const auto& iv : box.axes) axes.push_back({coord(iv.lo), coord(iv.hi)});
  return axes;
}

template <class T>
json box_json(const ToroidalBox<T>& box) {
  json axes = json::array();
  for (const auto& iv : box.axes) axes.push_back({coord(iv.a), coord(iv.b)});
  return axes;
}

json pair_json(const GoodPair& pair) {
  json j;
  j["a"] = pair.B.a;
  j["k"] = pair.B.k;
  j["b"] = pair.b;
  j["c"] = pair.c;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

ConstructionParams params_for(const std::string& preset, std::size_t d) {
  return ConstructionParams::from_preset(parse_preset(preset), d);
}

void write_points(const PointSet& set, const std::string& out) {
  if (out.empty() || out == "-")
    write_pointset(std::cout, set);
  else
    write_pointset(std::filesystem::path(out), set);
}

struct GenerateArgs {
  std::string construction;
  std::size_t d = 0;
  std::uint64_t n = 0;
  std::string preset = "desk";
  std::optional<std::uint64_t> seed;
  std::string cache;
  std::string output;
  bool verify = false;
  bool stage1_only = false;
};

std::uint64_t rounded_n(std::uint64_t n, const ConstructionParams& params) {
  const std::uint64_t m = params.round_down_n(n);
  if (m == 0)
    throw PreconditionError("n = " + std::to_string(n) + " is below the smallest valid size " +
                            params.n_modulus().str());
  return m;
}

int run_generate(const GenerateArgs& a) {
  auto need_seed = [&] {
    if (!a.seed) throw Error(ErrorCategory::invalid_argument, "--seed is required for " + a.construction);
    return *a.seed;
  };
  json info;
  info["construction"] = a.construction;
  info["d"] = a.d;
  info["n_requested"] = a.n;
  PointSet P;
  Stage1Options opts;
  opts.verify = a.verify;
  if (a.stage1_only && a.construction != "hh-modified" && a.construction != "derand")
    throw Error(ErrorCategory::invalid_argument, "--stage1-only applies to hh-modified and derand");
  if (a.stage1_only && a.construction == "hh-modified") {
    ConstructionParams params = params_for(a.preset, a.d);
    const std::uint64_t n = rounded_n(a.n, params);
    Stage1Result s1 = stage1(n, params, need_seed(), opts);
    info["n_construction"] = n;
    info["attempts"] = s1.attempts;
    info["verified"] = s1.verified;
    P = std::move(s1.points);
  } else if (a.stage1_only) {
    ConstructionParams params = params_for(a.preset, a.d);
    const std::uint64_t n = rounded_n(a.n, params);
    PreprocessCache cache = a.cache.empty() ? preprocess(params) : read_cache(a.cache, params);
    info["n_construction"] = n;
    P = derandomized_stage1(n, cache.anchors, params);
  } else if (a.construction == "hh-modified") {
    Construction c = hh_modified(a.n, params_for(a.preset, a.d), need_seed(), opts);
    info["n_construction"] = c.n_construction;
    info["guarantee"] = format_rational(c.guarantee);
    info["verified"] = c.verified;
    P = std::move(c.points);
  } else if (a.construction == "derand") {
    ConstructionParams params = params_for(a.preset, a.d);
    std::optional<PreprocessCache> cache;
    if (!a.cache.empty()) cache = read_cache(a.cache, params);
    Construction c = derandomized_construction(a.n, params, cache ? &*cache : nullptr);
    info["n_construction"] = c.n_construction;
    info["guarantee"] = format_rational(c.guarantee);
    P = std::move(c.points);
  } else if (a.construction == "toroidal") {
    ToroidalConstruction c = toroidal_construction(a.n, a.d, params_for(a.preset, a.d), need_seed(), opts);
    info["n_inner"] = c.n_inner;
    info["guarantee"] = c.guarantee;
    P = std::move(c.points);
  } else {
    BenchRun run;
    run.construction = a.construction;
    run.d = a.d;
    run.n = a.n;
    run.seed = a.seed;
    P = bench_points(run);
  }
  info["points"] = P.size();
  write_points(P, a.output);
  std::cerr << info.dump() << '\n';
  return 0;
}

int run_evaluate(const std::string& file, bool exact, bool torus, std::uint64_t budget) {
  PointSet P = read_pointset(std::filesystem::path(file));
  if (torus && P.space() != Space::torus) P = P.with_space(Space::torus);
  if (!torus && P.space() != Space::cube) P = P.with_space(Space::cube);
  OracleOptions opt;
  opt.node_budget = budget;
  json j;
  j["n"] = P.size();
  j["d"] = P.dimension();
  if (torus) {
    if (exact) {
      auto r = largest_empty_toroidal_box<Rational>(P, opt);
      j["volume"] = format_rational(r.volume);
      j["volume_float"] = to_double(r.volume);
      j["witness"] = box_json(r.witness);
      j["scaled"] = r.scaled;
    } else {
      auto r = largest_empty_toroidal_box<double>(P, opt);
      j["volume"] = r.volume;
      j["witness"] = box_json(r.witness);
      j["scaled"] = r.scaled;
    }
  } else if (exact) {
    auto r = largest_empty_box<Rational>(P, opt);
    j["volume"] = format_rational(r.volume);
    j["volume_float"] = to_double(r.volume);
    j["witness"] = box_json(r.witness);
    j["scaled"] = r.scaled;
  } else {
    auto r = largest_empty_box<double>(P, opt);
    j["volume"] = r.volume;
    j["witness"] = box_json(r.witness);
    j["scaled"] = r.scaled;
  }
  emit(j);
  return 0;
}

WeightSpec weight_from(const std::string& mode, std::optional<double> r0, std::optional<double> t, std::size_t d) {
  if (mode == "simple") return WeightSpec::simple(r0.value_or(weight_presets::simple_default(d).R0));
  if (mode != "two-level") throw Error(ErrorCategory::invalid_argument, "unknown weight " + mode);
  if (r0.has_value() != t.has_value())
    throw Error(ErrorCategory::invalid_argument, "--r0 and --t go together for the two-level weight");
  if (r0) return WeightSpec::two_level(*r0, *t);
  return d == 2 ? weight_presets::two_level_best() : weight_presets::two_level_corner(d);
}

int run_find_box(const std::string& file, const std::string& mode, std::optional<double> r0,
                 std::optional<double> t, std::uint64_t seed, std::optional<std::uint64_t> budget) {
  PointSet P = read_pointset(std::filesystem::path(file));
  WeightSpec w = weight_from(mode, r0, t, P.dimension());
  FinderParams fp = default_finder_params(w, P.dimension(), seed);
  if (budget) fp.sample_budget = *budget;
  CertifiedBox cb = find_empty_box(P, fp);
  json j;
  j["box"] = box_json(cb.box);
  j["volume"] = cb.volume;
  j["scaled"] = cb.volume * static_cast<double>(P.size());
  j["translate"] = cb.translate;
  j["certificate"] = {{"accepted", cb.certificate.accepted},
                      {"theorem_bound_met", cb.certificate.theorem_bound_met},
                      {"lemma_lower_bound", cb.certificate.lemma_lower_bound},
                      {"weight_sum", cb.certificate.weight_sum},
                      {"target", cb.certificate.target}};
  emit(j);
  return 0;
}

int run_bound(int theorem, std::size_t d, std::optional<std::uint64_t> n, std::optional<double> r0,
              std::optional<double> t) {
  if (d == 0) throw Error(ErrorCategory::invalid_argument, "--d must be positive");
  json j;
  j["theorem"] = theorem;
  j["d"] = d;
  if (theorem == 1 || theorem == 2) {
    if (!n || *n == 0) throw Error(ErrorCategory::invalid_argument, "--n is required for theorem " +
                                                                      std::to_string(theorem));
    j["n"] = *n;
    const double v = theorem == 1 ? theorem1_bound_clamped(d, *n) : upper_construction_bound(d, *n);
    j[theorem == 1 ? "lower_bound" : "upper_bound"] = v;
    j["scaled"] = v * static_cast<double>(*n);
    emit(j);
    return 0;
  }
  if (theorem != 3) throw Error(ErrorCategory::invalid_argument, "--theorem must be 1, 2 or 3");
  if (r0.has_value() != t.has_value())
    throw Error(ErrorCategory::invalid_argument, "--r0 and --t go together");
  WeightSpec w = r0 ? WeightSpec{*r0, *t, WeightMode::two_level}
                    : (d == 2 ? weight_presets::two_level_best() : weight_presets::two_level_corner(d));
  const double R0 = w.R0, T = *w.T;
  const bool below = T > 0 && T < R0;
  const bool gap = below && R0 - T < std::log(R0 / T);
  j["R0"] = R0;
  j["T"] = T;
  j["hypotheses"] = {{"T_below_R0", below}, {"gap_below_log_ratio", gap}};
  if (!below || !gap) {
    emit(j);
    throw PreconditionError("weight parameters violate T < R0 or R0 - T < log(R0/T)");
  }
  const double c = R0 * std::exp(-(R0 - T) / (2.0 * static_cast<double>(d)));
  j["c_lower"] = truncated(c, 5);
  j["c_lower_float"] = c;
  if (n) j["volume"] = c / static_cast<double>(*n);
  emit(j);
  return 0;
}

int run_verify(const std::string& file, std::uint64_t n, const std::string& preset) {
  PointSet P = read_pointset(std::filesystem::path(file));
  ConstructionParams params = params_for(preset, P.dimension());
  GoodBoxReport r = meets_all_good_boxes(P, n, params);
  json j;
  j["result"] = r.all_met ? "pass" : "fail";
  j["pairs_checked"] = r.pairs_checked;
  j["canonical_boxes"] = r.canonical_boxes;
  if (r.first_missed) j["first_missed"] = pair_json(*r.first_missed);
  emit(j);
  return r.all_met ? 0 : kVerificationFailed;
}

int run_preprocess(const std::string& preset, std::size_t d, const std::string& output, const std::string& method) {
  ConstructionParams params = params_for(preset, d);
  SelectionMethod m = SelectionMethod::greedy;
  if (method == "potential")
    m = SelectionMethod::potential;
  else if (method != "greedy")
    throw Error(ErrorCategory::invalid_argument, "unknown selection method " + method);
  PreprocessCache cache = preprocess(params, m);
  write_cache(output, cache);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cache.hash));
  json j;
  j["params"] = cache.params_text;
  j["hash"] = hash;
  j["residue_sets"] = cache.table.L_prime.size();
  j["representatives"] = cache.table.reps.size();
  j["anchors"] = cache.anchors.size();
  j["budget"] = params.sample_count();
  emit(j);
  return 0;
}

int run_bench_cmd(const std::string& config, const std::string& output, std::optional<unsigned> jobs) {
  BenchConfig cfg = read_bench_config(config);
  if (jobs) cfg.jobs = *jobs;
  if (output.empty() || output == "-") {
    run_bench(cfg, std::cout);
  } else {
    std::ostringstream csv;
    run_bench(cfg, csv);
    std::ofstream out(output);
    if (!out) throw Error(ErrorCategory::io, "cannot write " + output);
    out << csv.str();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-dispersion point sets, certified empty boxes and exact dispersion"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a point set");
  generate->add_option("--construction", gen.construction, "random|grid|halton|hh-modified|derand|toroidal")
      ->required()
      ->check(CLI::IsMember({"random", "grid", "halton", "hh-modified", "derand", "toroidal"}));
  generate->add_option("--d", gen.d, "dimension")->required();
  generate->add_option("--n", gen.n, "point budget (grid: m^d)")->required();
  generate->add_option("--preset", gen.preset, "paper|desk|toy");
  generate->add_option("--seed", gen.seed, "RNG seed (required for randomized constructions)");
  generate->add_option("--cache", gen.cache, "preprocess cache for derand");
  generate->add_flag("--verify", gen.verify, "resample stage 1 until every good box is met");
  generate->add_flag("--stage1-only", gen.stage1_only, "write the stage-1 set (hh-modified, derand)");
  generate->add_option("-o,--output", gen.output, "output file (default stdout)");

  std::string file;
  bool exact = false, torus = false;
  std::uint64_t node_budget = OracleOptions{}.node_budget;
  auto* evaluate = app.add_subcommand("evaluate", "Largest empty box of a point set");
  evaluate->add_flag("--exact", exact, "exact rational arithmetic");
  evaluate->add_flag("--torus", torus, "toroidal boxes");
  evaluate->add_option("--node-budget", node_budget, "search node limit");
  evaluate->add_option("file", file)->required();

  std::string weight = "simple";
  std::optional<double> r0, t;
  std::optional<std::uint64_t> seed, budget;
  auto* find = app.add_subcommand("find-box", "Certified empty box from a weighted translate");
  find->add_option("--weight", weight, "simple|two-level");
  find->add_option("--r0", r0);
  find->add_option("--t", t);
  find->add_option("--seed", seed)->required();
  find->add_option("--budget", budget, "translate samples (default 1000 d)");
  find->add_option("file", file)->required();

  int theorem = 1;
  std::size_t d = 0;
  std::optional<std::uint64_t> bound_n;
  auto* bound = app.add_subcommand("bound", "Closed-form bounds");
  bound->add_option("--theorem", theorem, "1 (lower), 2 (upper), 3 (improved lower constant)")->required();
  bound->add_option("--d", d)->required();
  bound->add_option("--n", bound_n);
  bound->add_option("--r0", r0);
  bound->add_option("--t", t);

  std::uint64_t verify_n = 0;
  std::string preset = "desk";
  auto* verify = app.add_subcommand("verify-good-boxes", "Check that a stage-1 set meets every good box");
  verify->add_option("--n", verify_n)->required();
  verify->add_option("--preset", preset);
  verify->add_option("file", file)->required();

  std::string output, method = "greedy";
  auto* pre = app.add_subcommand("preprocess", "Build the derandomization cache");
  pre->add_option("--preset", preset);
  pre->add_option("--d", d)->required();
  pre->add_option("--method", method, "greedy|potential");
  pre->add_option("-o,--output", output)->required();

  std::string config;
  std::optional<unsigned> jobs;
  auto* bench = app.add_subcommand("bench", "Run a benchmark suite and write CSV");
  bench->add_option("--config", config)->required();
  bench->add_option("--jobs", jobs);
  bench->add_option("-o,--output", output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ErrorCategory::invalid_argument);
  }

  try {
    if (generate->parsed()) return run_generate(gen);
    if (evaluate->parsed()) return run_evaluate(file, exact, torus, node_budget);
    if (find->parsed()) return run_find_box(file, weight, r0, t, *seed, budget);
    if (bound->parsed()) return run_bound(theorem, d, bound_n, r0, t);
    if (verify->parsed()) return run_verify(file, verify_n, preset);
    if (pre->parsed()) return run_preprocess(preset, d, output, method);
    if (bench->parsed()) return run_bench_cmd(config, output, jobs);
  } catch (const Error& e) {
    json err{{"error", std::string(to_string(e.category()))}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << '\n';
    return static_cast<int>(ErrorCategory::internal);
  }
  return 0;
}
