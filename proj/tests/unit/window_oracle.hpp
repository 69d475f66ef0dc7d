#pragma once

#include <algorithm>
#include <numeric>
#include <optional>

#include "predperm/problems.hpp"

namespace predperm::testing {

// Best objective over every order whose elements sit within k of their
// identity position, by enumeration.
inline std::optional<RealValue> best_within_window(const Instance& inst, std::size_t k) {
  const std::size_t n = size_of(inst);
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::optional<RealValue> best;
  const Sense sense = sense_of(inst);
  do {
    Permutation p(order);
    if (!within_window(p, k)) continue;
    const RealValue v = objective(inst, p);
    if (!best || better(v, *best, sense)) best = v;
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace predperm::testing
