#include "predperm/experiment.hpp"

#include <atomic>
#include <charconv>
#include <ostream>
#include <thread>

#include "predperm/rng.hpp"

namespace predperm {

std::string to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::none: return "none";
    case FailureReason::window_infeasible: return "window_infeasible";
    case FailureReason::budget: return "budget";
    case FailureReason::suboptimal_value: return "suboptimal_value";
    case FailureReason::resource_limit: return "resource_limit";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (kinds.empty() || sizes.empty() || epsilons.empty()) throw std::invalid_argument("experiment grid is empty");
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  for (std::size_t n : sizes)
    if (n == 0) throw std::invalid_argument("n must be >= 1");
  for (double e : epsilons)
    if (!(e > 0.0 && e <= 0.5)) throw std::invalid_argument("epsilon must lie in (0, 1/2]");
  if (pipeline.c_coeff < 0.0 || pipeline.budget_coeff < 0.0)
    throw std::invalid_argument("c_coeff and budget_coeff must be non-negative");
}

ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("kinds")) {
    c.kinds.clear();
    for (const auto& k : j.at("kinds")) c.kinds.push_back(planted_kind_from_string(k.get<std::string>()));
  }
  if (j.contains("n")) c.sizes = j.at("n").get<std::vector<std::size_t>>();
  if (j.contains("epsilon")) c.epsilons = j.at("epsilon").get<std::vector<double>>();
  if (j.contains("trials")) c.trials = j.at("trials").get<std::size_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("c_coeff")) c.pipeline.c_coeff = j.at("c_coeff").get<double>();
  if (j.contains("budget_coeff")) c.pipeline.budget_coeff = j.at("budget_coeff").get<double>();
  if (j.contains("k_max")) c.pipeline.k_max = j.at("k_max").get<std::size_t>();
  if (j.contains("refine_cap")) c.pipeline.refine_cap = j.at("refine_cap").get<std::size_t>();
  if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
  c.validate();
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kinds"] = nlohmann::json::array();
  for (PlantedKind k : c.kinds) j["kinds"].push_back(to_string(k));
  j["n"] = c.sizes;
  j["epsilon"] = c.epsilons;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["c_coeff"] = c.pipeline.c_coeff;
  j["budget_coeff"] = c.pipeline.budget_coeff;
  j["k_max"] = c.pipeline.k_max;
  j["refine_cap"] = c.pipeline.refine_cap;
  return j;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t cell, std::size_t trial) {
  return derive_seed({base, cell, trial});
}

TrialRecord run_trial(PlantedKind kind, std::size_t n, double epsilon, const PipelineConfig& pipeline,
                      std::uint64_t seed) {
  TrialRecord r;
  r.kind = kind;
  r.n = n;
  r.epsilon = epsilon;
  r.c_coeff = pipeline.c_coeff;
  r.budget_coeff = pipeline.budget_coeff;
  r.seed = seed;
  const WindowPlan plan = plan_windows(n, pipeline);
  r.k = plan.k;
  r.k_ws = plan.k_ws;
  r.query_cap = pipeline_query_cap(n, pipeline);

  const PlantedInstance planted = generate_planted(kind, n, derive_seed({seed, 1}));
  r.optimum = planted.optimum;
  PredictionOracle oracle(planted.sigma_star, epsilon, derive_seed({seed, 2}));
  PipelineConfig config = pipeline;
  config.seed = derive_seed({seed, 3});
  PipelineStats progress;
  try {
    const PipelineResult res =
        solve_with_predictions(planted.instance, oracle, config, QueryBudget::of(r.query_cap), &progress);
    r.achieved = res.value;
    r.warmstart_dislocation = res.stats.warmstart_dislocation;
    r.dp_within_window = within_window(relabeled_target(res.order, res.warm_order), plan.k);
    r.dp_wall_ms = res.stats.dp_ms;
    r.total_wall_ms = res.stats.total_ms;
    r.success = same_value(planted.instance, res.value, planted.optimum);
    r.failure = r.success ? FailureReason::none : FailureReason::suboptimal_value;
  } catch (const BudgetExhausted&) {
    r.failure = FailureReason::budget;
  } catch (const InfeasibleWindow&) {
    r.failure = FailureReason::window_infeasible;
    r.warmstart_dislocation = progress.warmstart_dislocation;
  } catch (const StateLimitExceeded&) {
    r.failure = FailureReason::resource_limit;
    r.warmstart_dislocation = progress.warmstart_dislocation;
  }
  r.queries_used = oracle.queries_used();
  if (r.failure != FailureReason::none && r.failure != FailureReason::suboptimal_value) {
    r.achieved = RealValue::infeasible(sense_of(planted.instance));
  }
  return r;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Job {
    PlantedKind kind;
    std::size_t n;
    double epsilon;
    std::size_t cell;
    std::size_t trial;
  };
  std::vector<Job> jobs;
  std::size_t cell = 0;
  for (PlantedKind kind : config.kinds)
    for (std::size_t n : config.sizes)
      for (double eps : config.epsilons) {
        for (std::size_t t = 0; t < config.trials; ++t) jobs.push_back({kind, n, eps, cell, t});
        ++cell;
      }

  std::vector<TrialRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const Job& job = jobs[i];
      records[i] = run_trial(job.kind, job.n, job.epsilon, config.pipeline,
                             trial_seed(config.seed, job.cell, job.trial));
      records[i].trial = job.trial;
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs.size());
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return records;
}

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string format_value(const RealValue& v) {
  if (v.is_finite()) return format_number(v.value());
  return v > RealValue(0.0) ? "inf" : "-inf";
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool with_timing) {
  out << "# " << kCsvVersion << "\n";
  out << "kind,n,epsilon,c_coeff,budget_coeff,k,k_ws,trial,seed,success,achieved,optimum,queries_used,query_cap,"
         "warmstart_dislocation,failure_reason";
  if (with_timing) out << ",dp_wall_ms,total_wall_ms";
  out << "\n";
  for (const TrialRecord& r : records) {
    out << to_string(r.kind) << ',' << r.n << ',' << format_number(r.epsilon) << ',' << format_number(r.c_coeff)
        << ',' << format_number(r.budget_coeff) << ',' << r.k << ',' << r.k_ws << ',' << r.trial << ',' << r.seed
        << ',' << (r.success ? "true" : "false") << ',' << format_value(r.achieved) << ','
        << format_value(r.optimum) << ',' << r.queries_used << ',' << r.query_cap << ','
        << (r.warmstart_dislocation ? std::to_string(*r.warmstart_dislocation) : "") << ','
        << to_string(r.failure);
    if (with_timing) out << ',' << format_number(r.dp_wall_ms) << ',' << format_number(r.total_wall_ms);
    out << "\n";
  }
}

}  // namespace predperm
