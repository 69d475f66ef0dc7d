#include "predperm/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace predperm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::size_t max_states(const CLocalStats& stats) {
  std::size_t most = 0;
  for (std::size_t s : stats.states_per_layer) most = std::max(most, s);
  return most;
}

}  // namespace

std::size_t window_k(std::size_t n, double c_coeff) {
  if (n <= 1) return 0;
  const double raw = std::ceil(c_coeff * std::log2(static_cast<double>(n)) - 1e-9);
  const auto k = raw <= 0.0 ? std::size_t{0} : static_cast<std::size_t>(raw);
  return std::min(k, n - 1);
}

WindowPlan plan_windows(std::size_t n, const PipelineConfig& config) {
  WindowPlan plan;
  plan.k_requested = window_k(n, config.c_coeff);
  plan.k = std::min(plan.k_requested, config.k_max);
  plan.k_ws = std::min(plan.k, config.refine_cap);
  return plan;
}

std::size_t pipeline_query_cap(std::size_t n, const PipelineConfig& config) {
  return sort_stage_cap(n, config.budget_coeff) + n * (2 * plan_windows(n, config).k + 1);
}

Permutation relabeled_target(const Permutation& target, const Permutation& order) {
  if (target.size() != order.size()) throw std::invalid_argument("relabeled_target: size mismatch");
  const Permutation inv = order.inverse();
  std::vector<Element> out(target.size());
  for (std::size_t p = 0; p < target.size(); ++p) out[p] = inv[target[p]];
  return Permutation(std::move(out));
}

PipelineResult solve_with_predictions(const Instance& instance, PredictionOracle& oracle,
                                      const PipelineConfig& config, QueryBudget budget,
                                      PipelineStats* progress) {
  const auto start = Clock::now();
  const std::size_t n = size_of(instance);
  if (oracle.n() != n) throw std::invalid_argument("oracle and instance sizes differ");
  validate(instance);

  PipelineStats local_stats;
  PipelineStats& stats = progress ? *progress : local_stats;
  stats = {};
  stats.windows = plan_windows(n, config);
  stats.query_cap = budget.max_pairs.value_or(0);
  oracle.set_budget(budget);

  WarmStartOptions ws;
  ws.c1 = config.budget_coeff;
  ws.seed = config.seed;
  QueryHandle handle(oracle);
  const ScoredOrder warm = warm_start(handle, stats.windows.k_ws, ws);
  stats.warmstart_ms = ms_since(start);
  stats.queries_used = oracle.queries_used();
  stats.warm_started = true;
  stats.warmstart_score = warm.score;
  stats.warmstart_dislocation = max_dislocation(oracle.hidden().inverse(), warm.order.inverse());

  const Instance local = relabel(instance, warm.order);
  const auto dp_start = Clock::now();
  Permutation rho;
  if (is_decomposable(local)) {
    auto sol = solve_window(*as_decomposable(local), stats.windows.k);
    stats.dp_max_states = sol.stats.max_keys_per_node;
    rho = std::move(sol.order);
  } else if (const auto* tsp = std::get_if<TspInstance>(&local)) {
    auto sol = solve_window(*as_clocal(*tsp), stats.windows.k);
    stats.dp_max_states = max_states(sol.stats);
    rho = std::move(sol.order);
  } else {
    auto sol = solve_window(*as_clocal(std::get<AuctionInstance>(local)), stats.windows.k);
    stats.dp_max_states = max_states(sol.stats);
    rho = std::move(sol.order);
  }
  stats.dp_ms = ms_since(dp_start);

  std::vector<Element> order(n);
  for (std::size_t p = 0; p < n; ++p) order[p] = warm.order[rho[p]];
  Permutation final_order(std::move(order));
  RealValue achieved = objective(instance, final_order);
  stats.total_ms = ms_since(start);
  PipelineStats copy = stats;
  return {std::move(final_order), achieved, warm.order, copy};
}

}  // namespace predperm
