#include "predperm/invariants.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "predperm/experiment.hpp"
#include "predperm/rng.hpp"
#include "predperm/warmstart.hpp"

namespace predperm {

namespace {

Instance random_instance(int kind, std::size_t n, std::mt19937_64& rng) {
  switch (kind % 5) {
    case 0: return random_mas(n, 0.4, rng);
    case 1: return random_mla(n, 0.4, rng);
    case 2: return random_schedule(n, 0.2, rng);
    case 3: return random_tsp(n, 9, rng);
    default: return random_auction(n, 1 + static_cast<std::size_t>(rng() % 3), rng);
  }
}

RealValue solve_exact(const Instance& inst, std::size_t k) {
  if (is_decomposable(inst)) return to_real(solve_window(*as_decomposable(inst), k).value);
  if (const auto* tsp = std::get_if<TspInstance>(&inst)) return to_real(solve_window(*as_clocal(*tsp), k).value);
  return solve_window(*as_clocal(std::get<AuctionInstance>(inst)), k).value;
}

Permutation solve_order(const Instance& inst, std::size_t k) {
  if (is_decomposable(inst)) return solve_window(*as_decomposable(inst), k).order;
  if (const auto* tsp = std::get_if<TspInstance>(&inst)) return solve_window(*as_clocal(*tsp), k).order;
  return solve_window(*as_clocal(std::get<AuctionInstance>(inst)), k).order;
}

// Each suite returns an empty string on success, else the first failure.
using Suite = std::function<std::string(std::mt19937_64&, std::size_t scale)>;

std::string oracle_suite(std::mt19937_64& rng, std::size_t scale) {
  const std::size_t n = 40 + 20 * scale;
  for (double eps : {0.1, 0.25, 0.4}) {
    PredictionOracle oracle(random_permutation(n, rng), eps, rng());
    std::size_t correct = 0, pairs = 0;
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b) {
        const int x = oracle.query(a, b);
        if (oracle.query(b, a) != -x) return "antisymmetry violated";
        if (oracle.query(a, b) != x) return "answer resampled";
        correct += (x > 0) == oracle.truly_before(a, b);
        ++pairs;
      }
    const double p = 0.5 + eps;
    const double sd = std::sqrt(p * (1 - p) / static_cast<double>(pairs));
    if (std::abs(static_cast<double>(correct) / static_cast<double>(pairs) - p) > 3 * sd)
      return "correctness rate off at epsilon " + format_number(eps);
    if (oracle.queries_used() != pairs) return "query counter counts repeats";
  }
  return {};
}

std::string permutation_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 100 * scale; ++t) {
    const std::size_t n = 1 + rng() % 64;
    const Permutation a = random_permutation(n, rng), b = random_permutation(n, rng), c = random_permutation(n, rng);
    if (compose_relabel(a, a) != Permutation::identity(n)) return "compose_relabel(s, s) is not the identity";
    if (max_dislocation(a, b) != max_dislocation(b, a)) return "dislocation not symmetric";
    if (max_dislocation(a, c) > max_dislocation(a, b) + max_dislocation(b, c)) return "triangle inequality fails";
  }
  return {};
}

std::string decomposition_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 40 * scale; ++t) {
    const std::size_t n = 3 + rng() % 10;
    std::vector<std::unique_ptr<DecomposableProblem>> problems;
    for (int kind : {0, 1, 2}) problems.push_back(as_decomposable(random_instance(kind, n, rng)));
    std::vector<int> table(n * n, 0);
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b) {
        const int x = static_cast<int>(rng() % 3) - 1;
        table[a * n + b] = x;
        table[b * n + a] = -x;
      }
    problems.push_back(std::make_unique<ScoreProblem>(n, [&](Element a, Element b) { return table[a * n + b]; }));
    for (const auto& problem : problems) {
      const Permutation sigma = random_permutation(n, rng);
      const std::size_t i = rng() % (n - 1);
      const std::size_t j = i + 1 + rng() % (n - 1 - i);
      const std::size_t s = i + rng() % (j - i);
      if (!check_decomposition(*problem, sigma, i, s, j))
        return "decomposition identity fails at (" + std::to_string(i) + "," + std::to_string(s) + "," +
               std::to_string(j) + ")";
    }
  }
  return {};
}

std::string evaluation_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 40 * scale; ++t) {
    const std::size_t n = 1 + rng() % 12;
    const Instance inst = random_instance(static_cast<int>(t), n, rng);
    const Permutation sigma = random_permutation(n, rng);
    RealValue via;
    if (is_decomposable(inst)) via = to_real(evaluate(*as_decomposable(inst), sigma));
    else if (const auto* tsp = std::get_if<TspInstance>(&inst)) via = to_real(eval_clocal(*as_clocal(*tsp), sigma));
    else via = eval_clocal(*as_clocal(std::get<AuctionInstance>(inst)), sigma);
    if (!same_value(inst, via, objective(inst, sigma))) return kind_name(inst) + ": adapter sum differs from value";
  }
  return {};
}

std::string exactness_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 10 * scale; ++t) {
    const std::size_t n = 4 + rng() % 4;
    const Instance inst = random_instance(static_cast<int>(t), n, rng);
    if (!same_value(inst, solve_exact(inst, n - 1), brute_force(inst).value))
      return kind_name(inst) + ": window DP with k = n - 1 misses the optimum";
  }
  return {};
}

std::string window_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 10 * scale; ++t) {
    const std::size_t n = 5 + rng() % 4;
    const Instance inst = random_instance(static_cast<int>(t), n, rng);
    std::optional<RealValue> previous;
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, std::size_t{2}, n - 1}) {
      RealValue v;
      try {
        const Permutation order = solve_order(inst, k);
        if (!within_window(order, k)) return kind_name(inst) + ": DP output leaves the window";
        v = objective(inst, order);
      } catch (const InfeasibleWindow&) {
        v = RealValue::infeasible(sense_of(inst));
      }
      if (previous && better(*previous, v, sense_of(inst), 1e-9))
        return kind_name(inst) + ": value not monotone in k";
      previous = v;
    }
  }
  return {};
}

std::string planted_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < 4 * scale; ++t)
    for (PlantedKind kind : all_planted_kinds()) {
      const std::size_t n = 2 + rng() % 6;
      const PlantedInstance p = generate_planted(kind, n, rng());
      const BruteForceResult best = brute_force(p.instance);
      if (!same_value(p.instance, best.value, p.optimum)) return to_string(kind) + ": claimed optimum is wrong";
      if (!same_value(p.instance, objective(p.instance, p.sigma_star), p.optimum))
        return to_string(kind) + ": sigma_star is not optimal";
    }
  return {};
}

std::string perfect_prediction_suite(std::mt19937_64& rng, std::size_t scale) {
  for (std::size_t t = 0; t < scale; ++t)
    for (PlantedKind kind : all_planted_kinds())
      for (std::size_t n : {8, 16}) {
        const TrialRecord r = run_trial(kind, n, 0.5, PipelineConfig{}, rng());
        if (!r.success) return to_string(kind) + " n=" + std::to_string(n) + ": " + to_string(r.failure);
        if (r.queries_used > r.query_cap) return "query cap exceeded";
      }
  return {};
}

}  // namespace

std::vector<InvariantResult> run_invariants(bool quick, std::uint64_t seed) {
  const std::vector<std::pair<std::string, Suite>> suites{
      {"oracle answers are fixed, antisymmetric and calibrated", oracle_suite},
      {"permutation algebra", permutation_suite},
      {"decomposition identities", decomposition_suite},
      {"adapter sums equal objective values", evaluation_suite},
      {"window DP with k = n - 1 equals brute force", exactness_suite},
      {"window soundness and monotonicity in k", window_suite},
      {"planted optima", planted_suite},
      {"perfect predictions solve planted instances", perfect_prediction_suite},
  };
  const std::size_t scale = quick ? 1 : 5;
  std::vector<InvariantResult> out;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    std::mt19937_64 rng(derive_seed({seed, i}));
    const auto start = std::chrono::steady_clock::now();
    InvariantResult r;
    r.name = suites[i].first;
    try {
      r.detail = suites[i].second(rng, scale);
      r.passed = r.detail.empty();
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace predperm
