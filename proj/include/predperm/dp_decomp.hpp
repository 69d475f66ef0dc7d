#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "predperm/element_set.hpp"
#include "predperm/extended.hpp"
#include "predperm/permutation.hpp"

namespace predperm {

class InfeasibleWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown before a window DP would allocate more states than allowed.
class StateLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A permutation problem with the decomposition property: there is a range
// objective g(first, last, L, R, sub) over the elements at positions
// [first, last], which depends on the elements outside the range only
// through the sets L (before) and R (after), with
//
//   g(i, j, L, R, sigma(i..j)) = g(i, s, ...) + g(s+1, j, ...)
//                                + combine(L, R, S(i..s), S(s+1..j))
//
// and g(0, n-1, {}, {}, sigma) equal to the objective. Positions are 0-based.
class DecomposableProblem {
 public:
  virtual ~DecomposableProblem() = default;

  virtual std::size_t size() const = 0;
  virtual Sense sense() const = 0;

  // g on the single-position range [pos, pos] holding element e.
  virtual IntValue leaf(std::size_t pos, Element e, const ElementSet& left, const ElementSet& right) const = 0;

  // The correction h; it sees sets only, never orders.
  virtual IntValue combine(const ElementSet& left, const ElementSet& right, const ElementSet& left_part,
                           const ElementSet& right_part) const = 0;

  // Direct evaluation of g, used for checking and re-evaluation.
  virtual IntValue evaluate_range(std::size_t first, std::size_t last, const ElementSet& left,
                                  const ElementSet& right, std::span<const Element> sub) const = 0;
};

// f(sigma) = g(0, n-1, {}, {}, sigma).
IntValue evaluate(const DecomposableProblem& problem, const Permutation& sigma);

// Checks the recurrence at split (first..split | split+1..last) for sigma.
// Requires first <= split < last < n.
bool check_decomposition(const DecomposableProblem& problem, const Permutation& sigma, std::size_t first,
                         std::size_t split, std::size_t last);

enum class SplitPolicy {
  midpoint,  // balanced recursion, split at floor((i+j)/2)
  peel,      // split off the first position: s = i
};

struct DecompOptions {
  SplitPolicy split = SplitPolicy::peel;
  std::size_t max_states = std::size_t{1} << 24;  // per recursion node
};

struct DecompStats {
  std::size_t nodes = 0;
  std::size_t max_keys_per_node = 0;
  std::size_t total_keys = 0;
  // Per node (i, j) in processing order, the number of boundary keys stored.
  std::vector<std::size_t> keys_per_node;
};

struct DecompSolution {
  Permutation order;
  IntValue value;
  DecompStats stats;
};

// 2^(6k), saturating at SIZE_MAX.
std::size_t decomp_key_bound(std::size_t k);

// Exact optimum over all permutations with max dislocation <= k from the
// identity. Throws InfeasibleWindow when every such permutation is
// infeasible and StateLimitExceeded when a node would need more than
// options.max_states keys.
DecompSolution solve_window(const DecomposableProblem& problem, std::size_t k, const DecompOptions& options = {});

}  // namespace predperm
