// predperm: generate planted instances, solve them from noisy predictions,
// brute-force small ones, and run seeded experiment grids.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "predperm/experiment.hpp"
#include "predperm/invariants.hpp"
#include "predperm/pipeline.hpp"
#include "predperm/problems.hpp"

namespace fs = std::filesystem;
using namespace predperm;

namespace {

enum Exit : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kWindowInfeasible = 3,
  kBudget = 4,
  kSuboptimal = 5,
  kResourceLimit = 6,
  kInput = 7,
};

constexpr const char* kOutDirEnv = "PREDPERM_OUT_DIR";

fs::path default_out_dir() {
  const char* dir = std::getenv(kOutDirEnv);
  return dir && *dir ? fs::path(dir) : fs::current_path();
}

fs::path resolve_out(const std::string& out, const std::string& fallback_name) {
  if (!out.empty()) return out;
  return default_out_dir() / fallback_name;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw std::runtime_error("write to " + path.string() + " failed");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(f);
}

std::string one_based(const Permutation& p) {
  std::ostringstream s;
  s << '[';
  for (std::size_t i = 0; i < p.size(); ++i) s << (i ? "," : "") << p[i] + 1;
  s << ']';
  return s.str();
}

std::string millis(double ms) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << ms;
  return s.str();
}

struct LoadedInstance {
  Instance instance;
  std::optional<Permutation> sigma_star;
};

LoadedInstance load_instance(const std::string& path) {
  const nlohmann::json j = read_json(path);
  LoadedInstance out{instance_from_json(j), std::nullopt};
  if (j.contains("sigma_star") && !j.at("sigma_star").is_null()) {
    const auto v = j.at("sigma_star").get<std::vector<long long>>();
    out.sigma_star = Permutation::from_one_based(v);
    if (out.sigma_star->size() != size_of(out.instance)) throw std::invalid_argument("sigma_star has the wrong length");
  }
  return out;
}

int exit_code(FailureReason r) {
  switch (r) {
    case FailureReason::none: return kOk;
    case FailureReason::window_infeasible: return kWindowInfeasible;
    case FailureReason::budget: return kBudget;
    case FailureReason::suboptimal_value: return kSuboptimal;
    case FailureReason::resource_limit: return kResourceLimit;
  }
  return kCheckFailed;
}

struct SolveArgs {
  std::string instance;
  double epsilon = 0.3;
  std::uint64_t seed = 1;
  PipelineConfig pipeline;
  std::string out;
};

int cmd_solve(const SolveArgs& a) {
  const LoadedInstance loaded = load_instance(a.instance);
  const Instance& inst = loaded.instance;
  const std::size_t n = size_of(inst);
  Permutation star;
  RealValue optimum;
  std::string mode;
  if (loaded.sigma_star) {
    star = *loaded.sigma_star;
    optimum = objective(inst, star);
    mode = "planted";
  } else if (n <= kBruteForceMaxN) {
    const BruteForceResult best = brute_force(inst);
    star = best.order;
    optimum = best.value;
    mode = "brute";
  } else {
    throw std::invalid_argument("instance has no sigma_star and n > " + std::to_string(kBruteForceMaxN));
  }

  PipelineConfig config = a.pipeline;
  config.seed = a.seed;
  PredictionOracle oracle(star, a.epsilon, a.seed);
  const std::size_t cap = pipeline_query_cap(n, config);

  nlohmann::json report;
  report["instance"] = a.instance;
  report["kind"] = kind_name(inst);
  report["n"] = n;
  report["mode"] = mode;
  report["epsilon"] = a.epsilon;
  report["seed"] = a.seed;
  report["c_coeff"] = config.c_coeff;
  report["budget_coeff"] = config.budget_coeff;
  report["query_cap"] = cap;
  report["optimum"] = format_value(optimum);

  FailureReason failure = FailureReason::none;
  PipelineStats stats;
  std::string error;
  try {
    const PipelineResult res = solve_with_predictions(inst, oracle, config, QueryBudget::of(cap), &stats);
    report["order"] = res.order.to_one_based();
    report["achieved"] = format_value(res.value);
    if (!same_value(inst, res.value, optimum)) failure = FailureReason::suboptimal_value;
  } catch (const BudgetExhausted& e) {
    failure = FailureReason::budget;
    error = e.what();
  } catch (const InfeasibleWindow& e) {
    failure = FailureReason::window_infeasible;
    error = e.what();
  } catch (const StateLimitExceeded& e) {
    failure = FailureReason::resource_limit;
    error = e.what();
  }
  report["k"] = stats.windows.k;
  report["k_requested"] = stats.windows.k_requested;
  report["k_ws"] = stats.windows.k_ws;
  report["queries_used"] = oracle.queries_used();
  if (stats.warm_started) report["warmstart_dislocation"] = stats.warmstart_dislocation;
  report["success"] = failure == FailureReason::none;
  report["failure_reason"] = to_string(failure);
  if (!error.empty()) report["error"] = error;
  report["warmstart_ms"] = stats.warmstart_ms;
  report["dp_ms"] = stats.dp_ms;

  std::cout << "kind            " << kind_name(inst) << " (n = " << n << ", " << mode << ")\n"
            << "epsilon         " << format_number(a.epsilon) << "\n"
            << "window k        " << stats.windows.k;
  if (stats.windows.k != stats.windows.k_requested) std::cout << " (requested " << stats.windows.k_requested << ")";
  std::cout << ", refine " << stats.windows.k_ws << "\n"
            << "achieved        " << (report.contains("achieved") ? report["achieved"].get<std::string>() : "-")
            << "\n"
            << "optimum         " << format_value(optimum) << "\n"
            << "queries         " << oracle.queries_used() << " / " << cap << "\n"
            << "dislocation     " << (stats.warm_started ? std::to_string(stats.warmstart_dislocation) : "-") << "\n"
            << "time            warm start " << millis(stats.warmstart_ms) << " ms, dp " << millis(stats.dp_ms)
            << " ms\n"
            << "result          " << (failure == FailureReason::none ? "optimal" : to_string(failure)) << "\n";
  if (!error.empty()) std::cout << "error           " << error << "\n";

  if (!a.out.empty() || std::getenv(kOutDirEnv)) {
    const fs::path path = resolve_out(a.out, fs::path(a.instance).stem().string() + ".report.json");
    write_file(path, report.dump(2) + "\n");
    std::cout << "report          " << path.string() << "\n";
  }
  return exit_code(failure);
}

int cmd_generate(const std::string& kind, std::size_t n, std::uint64_t seed, const std::string& out) {
  const PlantedKind k = planted_kind_from_string(kind);
  const PlantedInstance p = generate_planted(k, n, seed);
  nlohmann::json j = to_json(p.instance);
  j["sigma_star"] = p.sigma_star.to_one_based();
  j["planted"] = kind;
  j["optimum"] = format_value(p.optimum);
  const fs::path path = resolve_out(out, kind + "_n" + std::to_string(n) + "_s" + std::to_string(seed) + ".json");
  write_file(path, j.dump() + "\n");
  std::cout << path.string() << "\n";
  return kOk;
}

int cmd_brute(const std::string& path) {
  const LoadedInstance loaded = load_instance(path);
  const BruteForceResult best = brute_force(loaded.instance);
  std::cout << "optimum " << format_value(best.value) << "\n"
            << "order   " << one_based(best.order) << "\n";
  return kOk;
}

struct ExperimentArgs {
  std::string config;
  std::vector<std::string> kinds;
  std::vector<std::size_t> sizes;
  std::vector<double> epsilons;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> c_coeff;
  std::optional<double> budget_coeff;
  std::optional<std::size_t> threads;
  bool no_timing = false;
  std::string out;
};

int cmd_experiment(const ExperimentArgs& a) {
  ExperimentConfig c = a.config.empty() ? ExperimentConfig{} : experiment_config_from_json(read_json(a.config));
  if (!a.kinds.empty()) {
    c.kinds.clear();
    for (const auto& k : a.kinds) c.kinds.push_back(planted_kind_from_string(k));
  }
  if (!a.sizes.empty()) c.sizes = a.sizes;
  if (!a.epsilons.empty()) c.epsilons = a.epsilons;
  if (a.trials) c.trials = *a.trials;
  if (a.seed) c.seed = *a.seed;
  if (a.c_coeff) c.pipeline.c_coeff = *a.c_coeff;
  if (a.budget_coeff) c.pipeline.budget_coeff = *a.budget_coeff;
  if (a.threads) c.threads = *a.threads;
  c.validate();

  const auto records = run_experiment(c);
  std::ostringstream csv;
  write_csv(csv, records, !a.no_timing);
  const fs::path path = resolve_out(a.out, "experiment.csv");
  write_file(path, csv.str());

  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i, wins = 0;
    while (j < records.size() && records[j].kind == records[i].kind && records[j].n == records[i].n &&
           records[j].epsilon == records[i].epsilon) {
      wins += records[j].success;
      ++j;
    }
    std::cout << to_string(records[i].kind) << " n=" << records[i].n << " eps=" << format_number(records[i].epsilon)
              << " k=" << records[i].k << "  success " << wins << "/" << (j - i) << "\n";
    i = j;
  }
  std::cout << path.string() << "\n";
  return kOk;
}

int cmd_check(bool quick, std::uint64_t seed) {
  bool all = true;
  for (const InvariantResult& r : run_invariants(quick, seed)) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << format_number(std::round(r.seconds * 100) / 100)
              << " s)";
    if (!r.passed) std::cout << ": " << r.detail;
    std::cout << "\n";
    all = all && r.passed;
  }
  return all ? kOk : kCheckFailed;
}

void add_pipeline_flags(CLI::App* cmd, PipelineConfig& p) {
  cmd->add_option("--c-coeff", p.c_coeff, "window k = ceil(c_coeff * log2 n)")->capture_default_str();
  cmd->add_option("--budget-coeff", p.budget_coeff, "sort stage query cap C1 * n * log2 n")->capture_default_str();
  cmd->add_option("--k-max", p.k_max, "largest DP window")->capture_default_str();
  cmd->add_option("--refine-cap", p.refine_cap, "largest warm-start refine window")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact permutation solvers driven by noisy pairwise predictions"};
  app.require_subcommand(1);
  app.footer(std::string("Output files default to $") + kOutDirEnv + " or the current directory.");

  std::string kind = "mas_tournament", out;
  std::size_t n = 16;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Write a planted instance with its sigma_star");
  gen->add_option("--kind", kind, "mas_tournament | mla_path | sched_spt | sched_chain | tsp_cycle_gap")
      ->capture_default_str();
  gen->add_option("--n", n, "number of elements")->capture_default_str();
  gen->add_option("--seed", seed)->capture_default_str();
  gen->add_option("--out", out, "output path");

  SolveArgs solve;
  auto* sol = app.add_subcommand("solve", "Solve an instance from noisy predictions");
  sol->add_option("instance", solve.instance, "instance JSON")->required();
  sol->add_option("--epsilon", solve.epsilon, "prediction advantage in (0, 0.5]")->capture_default_str();
  sol->add_option("--seed", solve.seed)->capture_default_str();
  sol->add_option("--out", solve.out, "report JSON path");
  add_pipeline_flags(sol, solve.pipeline);

  std::string brute_path;
  auto* brute = app.add_subcommand("brute", "Exhaustive optimum for n <= 10");
  brute->add_option("instance", brute_path, "instance JSON")->required();

  ExperimentArgs exp;
  double exp_c = 0, exp_b = 0;
  std::size_t exp_trials = 0, exp_threads = 0;
  std::uint64_t exp_seed = 0;
  auto* ex = app.add_subcommand("experiment", "Run a seeded grid of planted trials and write CSV");
  ex->add_option("config", exp.config, "experiment JSON (optional; flags override it)");
  ex->add_option("--kind", exp.kinds, "planted kinds")->delimiter(',');
  ex->add_option("--n", exp.sizes, "instance sizes")->delimiter(',');
  ex->add_option("--epsilon", exp.epsilons, "prediction advantages")->delimiter(',');
  auto* o_trials = ex->add_option("--trials", exp_trials, "trials per cell");
  auto* o_seed = ex->add_option("--seed", exp_seed, "base seed");
  auto* o_c = ex->add_option("--c-coeff", exp_c, "window k = ceil(c_coeff * log2 n)");
  auto* o_b = ex->add_option("--budget-coeff", exp_b, "sort stage query cap C1 * n * log2 n");
  auto* o_threads = ex->add_option("--threads", exp_threads, "worker threads (0: all cores)");
  ex->add_flag("--no-timing", exp.no_timing, "omit the timing columns");
  ex->add_option("--out", exp.out, "CSV path");

  bool quick = false;
  std::uint64_t check_seed = 1;
  auto* chk = app.add_subcommand("check", "Run the invariant suites");
  chk->add_flag("--quick", quick, "smaller samples");
  chk->add_option("--seed", check_seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_generate(kind, n, seed, out);
    if (*sol) return cmd_solve(solve);
    if (*brute) return cmd_brute(brute_path);
    if (*ex) {
      if (*o_trials) exp.trials = exp_trials;
      if (*o_seed) exp.seed = exp_seed;
      if (*o_c) exp.c_coeff = exp_c;
      if (*o_b) exp.budget_coeff = exp_b;
      if (*o_threads) exp.threads = exp_threads;
      return cmd_experiment(exp);
    }
    if (*chk) return cmd_check(quick, check_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
