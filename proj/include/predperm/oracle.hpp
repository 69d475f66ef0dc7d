#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <json.hpp>

#include "predperm/permutation.hpp"

namespace predperm {

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cap on the number of distinct unordered pairs an oracle will answer.
struct QueryBudget {
  std::optional<std::size_t> max_pairs;  // nullopt: unlimited

  static QueryBudget unlimited() { return {}; }
  static QueryBudget of(std::size_t pairs) { return {pairs}; }
};

// Simulated pairwise-precedence predictor. Each unordered pair {l, t} is
// answered correctly (agreeing with the hidden order) with probability
// exactly 1/2 + epsilon. The realization is a keyed pseudorandom function of
// (seed, pair), so answers do not depend on query order, and once asked a
// pair is cached: re-asking never resamples.
class PredictionOracle {
 public:
  PredictionOracle(Permutation hidden, double epsilon, std::uint64_t seed,
                   QueryBudget budget = QueryBudget::unlimited());

  // +1 if l is predicted to precede t, -1 otherwise. Throws BudgetExhausted
  // when a new pair would exceed the budget; cached pairs are always free.
  int query(Element l, Element t);

  // Cached answer for the pair, if it was asked before. Never counts.
  std::optional<int> cached(Element l, Element t) const;

  std::size_t n() const { return hidden_.size(); }
  double epsilon() const { return epsilon_; }
  std::uint64_t seed() const { return seed_; }
  const QueryBudget& budget() const { return budget_; }
  void set_budget(QueryBudget budget) { budget_ = budget; }
  std::size_t queries_used() const { return queries_used_; }
  std::optional<std::size_t> remaining() const;

  // Ground truth, for measurement code only; solvers receive a QueryHandle.
  const Permutation& hidden() const { return hidden_; }
  // True iff l precedes t in the hidden order.
  bool truly_before(Element l, Element t) const { return position_[l] < position_[t]; }

  nlohmann::json to_json() const;
  static PredictionOracle from_json(const nlohmann::json& j);

 private:
  std::size_t pair_index(Element lo, Element hi) const;
  bool realized_correct(Element lo, Element hi) const;

  Permutation hidden_;
  std::vector<Element> position_;
  double epsilon_;
  std::uint64_t seed_;
  QueryBudget budget_;
  // 0 = unasked, otherwise the answer for (lo, hi) with lo < hi.
  std::vector<std::int8_t> answers_;
  std::size_t queries_used_ = 0;
};

// The view of an oracle that solver code receives: it can ask and count
// queries but cannot read the hidden permutation.
class QueryHandle {
 public:
  explicit QueryHandle(PredictionOracle& oracle) : oracle_(&oracle) {}

  int query(Element l, Element t) { return oracle_->query(l, t); }
  std::optional<int> cached(Element l, Element t) const { return oracle_->cached(l, t); }
  std::size_t n() const { return oracle_->n(); }
  std::size_t queries_used() const { return oracle_->queries_used(); }
  std::optional<std::size_t> remaining() const { return oracle_->remaining(); }

 private:
  PredictionOracle* oracle_;
};

// Fraction of the given pairs whose (queried) answer agrees with the hidden
// order. Asks every pair, so it consumes budget like any other query.
double correctness_rate(PredictionOracle& oracle, const std::vector<std::pair<Element, Element>>& pairs);

}  // namespace predperm
