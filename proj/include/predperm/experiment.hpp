#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "predperm/pipeline.hpp"
#include "predperm/problems.hpp"

namespace predperm {

enum class FailureReason { none, window_infeasible, budget, suboptimal_value, resource_limit };

std::string to_string(FailureReason reason);

struct ExperimentConfig {
  std::vector<PlantedKind> kinds{PlantedKind::mas_tournament};
  std::vector<std::size_t> sizes{64};
  std::vector<double> epsilons{0.3};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  PipelineConfig pipeline{};
  std::size_t threads = 0;  // 0: hardware concurrency

  // Throws std::invalid_argument on an empty grid, trials == 0, n == 0, or
  // an epsilon outside (0, 1/2].
  void validate() const;
};

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);

struct TrialRecord {
  PlantedKind kind{};
  std::size_t n = 0;
  double epsilon = 0.0;
  double c_coeff = 0.0;
  double budget_coeff = 0.0;
  std::size_t k = 0;
  std::size_t k_ws = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  RealValue achieved;
  RealValue optimum;
  std::size_t queries_used = 0;
  std::size_t query_cap = 0;
  std::optional<std::size_t> warmstart_dislocation;  // unset when the warm start failed
  FailureReason failure = FailureReason::none;
  // Whether the DP answer sat within window k of the warm order; unset when
  // the DP produced nothing. Not written to CSV.
  std::optional<bool> dp_within_window;
  double dp_wall_ms = 0.0;
  double total_wall_ms = 0.0;
};

// Seed of trial `trial` in grid cell `cell`.
std::uint64_t trial_seed(std::uint64_t base, std::size_t cell, std::size_t trial);

// One planted trial: instance, oracle and warm start all derive from `seed`.
TrialRecord run_trial(PlantedKind kind, std::size_t n, double epsilon, const PipelineConfig& pipeline,
                      std::uint64_t seed);

// Cells run in kinds x sizes x epsilons order; rows come back in that order
// with trials ascending, whatever the thread count.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvVersion = "predperm-experiment v1";

// Writes the header comment, the column line and one row per record. Timing
// columns are omitted when `with_timing` is false.
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records, bool with_timing = true);

std::string format_number(double x);
std::string format_value(const RealValue& v);

}  // namespace predperm
