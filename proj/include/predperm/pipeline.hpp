#pragma once

#include <cstddef>
#include <optional>

#include "predperm/oracle.hpp"
#include "predperm/problems.hpp"
#include "predperm/warmstart.hpp"

namespace predperm {

struct PipelineConfig {
  double c_coeff = 3.5;        // k = ceil(c_coeff * log2 n)
  double budget_coeff = 16.0;  // C1 of the sort stage cap
  // Exact window DPs cost about C(2k, k) states per position, so k is
  // clamped here; the refine window is clamped separately.
  std::size_t k_max = 8;
  std::size_t refine_cap = 8;
  std::uint64_t seed = 0;  // randomness of the warm start
};

// ceil(c_coeff * log2 n), clamped to n - 1.
std::size_t window_k(std::size_t n, double c_coeff);

struct WindowPlan {
  std::size_t k_requested = 0;
  std::size_t k = 0;     // DP window after k_max
  std::size_t k_ws = 0;  // refine window
};

WindowPlan plan_windows(std::size_t n, const PipelineConfig& config);

// Distinct-pair cap of a pipeline run: floor(C1 n log2 n) + n (2k + 1).
std::size_t pipeline_query_cap(std::size_t n, const PipelineConfig& config);

struct PipelineStats {
  WindowPlan windows;
  std::size_t queries_used = 0;
  std::size_t query_cap = 0;
  bool warm_started = false;  // the fields below it are meaningful
  std::int64_t warmstart_score = 0;
  // Max over elements of |position in sigma* - position in the warm start|,
  // measured against the oracle's hidden order.
  std::size_t warmstart_dislocation = 0;
  std::size_t dp_max_states = 0;
  double warmstart_ms = 0.0;
  double dp_ms = 0.0;
  double total_ms = 0.0;
};

struct PipelineResult {
  Permutation order;
  RealValue value;
  Permutation warm_order;
  PipelineStats stats;
};

// Warm start from the oracle, relabel the instance by the warm order, solve
// exactly within window k, and map the answer back. The oracle's budget is
// replaced by `budget`. Throws BudgetExhausted, InfeasibleWindow, or
// StateLimitExceeded. When `progress` is given it holds the stats gathered
// so far, which survive an exception thrown by the DP stage.
PipelineResult solve_with_predictions(const Instance& instance, PredictionOracle& oracle,
                                      const PipelineConfig& config, QueryBudget budget,
                                      PipelineStats* progress = nullptr);

// Position of every element under `target`, expressed in the labels of a
// problem relabeled by `order`: the target the window DP has to reach.
Permutation relabeled_target(const Permutation& target, const Permutation& order);

}  // namespace predperm
