#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "predperm/dp_decomp.hpp"
#include "predperm/element_set.hpp"
#include "predperm/oracle.hpp"
#include "predperm/permutation.hpp"

namespace predperm {

// Knobs of the noisy sort. Rounds run at shrinking window widths; each round
// places every element at its best cut against a random sample of the
// elements currently near it, then re-sorts by the estimates.
struct WarmStartOptions {
  double c1 = 16.0;              // stage cap: floor(c1 * n * log2 n) distinct pairs
  std::size_t sample = 40;       // comparisons per element in a coarse round
  double shrink = 1.3;           // window shrink factor between coarse rounds
  std::size_t final_rounds = 6;  // full-window rounds at the narrowest width
  std::uint64_t seed = 0;
  DecompOptions refine{};  // passed to the window DP of the refine step
};

std::size_t sort_stage_cap(std::size_t n, double c1);

// Narrowest window used by the sort: 2 * ceil(log2 n), at least 2.
std::size_t sort_min_window(std::size_t n);

// Total distinct-pair cap of a warm start: sort_stage_cap + n * (2 k_ws + 1).
std::size_t warm_start_query_cap(std::size_t n, double c1, std::size_t k_ws);

// Order from noisy comparisons using at most sort_stage_cap(n, c1) new pairs.
// With all answers correct the result is the hidden order. Throws
// BudgetExhausted when the stage cap cannot pay for a single comparison, or
// when the oracle's own budget runs out.
Permutation noisy_sort(QueryHandle& oracle, const WarmStartOptions& options = {});

// Score of an order over the answered pairs: sum over i < j of the cached
// answer q(order[i], order[j]); unasked pairs count zero.
std::int64_t answered_score(const QueryHandle& oracle, const Permutation& order);

// Score objective as a decomposable problem: maximize sum over i < j of
// q(sigma[i], sigma[j]) for a fixed antisymmetric table q with values in
// {-1, 0, +1}. The same shape as weighted MAS with signed weights.
class ScoreProblem final : public DecomposableProblem {
 public:
  ScoreProblem(std::size_t n, const std::function<int(Element, Element)>& q);

  std::size_t size() const override { return plus_.size(); }
  Sense sense() const override { return Sense::maximize; }
  IntValue leaf(std::size_t, Element, const ElementSet&, const ElementSet&) const override { return 0; }
  IntValue combine(const ElementSet& left, const ElementSet& right, const ElementSet& left_part,
                   const ElementSet& right_part) const override;
  IntValue evaluate_range(std::size_t first, std::size_t last, const ElementSet& left, const ElementSet& right,
                          std::span<const Element> sub) const override;

 private:
  std::vector<ElementSet> plus_;   // plus_[u]: v with q(u, v) = +1
  std::vector<ElementSet> minus_;  // minus_[u]: v with q(u, v) = -1
};

struct ScoredOrder {
  Permutation order;
  std::int64_t score = 0;
  std::size_t queries_spent = 0;
};

// Asks every pair at distance <= 2 k_ws + 1 in `initial`, then returns the
// best answered-pair score among orders within dislocation k_ws of
// `initial`. The score never drops below that of `initial`.
ScoredOrder window_score_refine(QueryHandle& oracle, const Permutation& initial, std::size_t k_ws,
                                const DecompOptions& options = {});

// noisy_sort followed by window_score_refine.
ScoredOrder warm_start(QueryHandle& oracle, std::size_t k_ws, const WarmStartOptions& options = {});

}  // namespace predperm
