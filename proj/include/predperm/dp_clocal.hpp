#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "predperm/dp_decomp.hpp"
#include "predperm/extended.hpp"
#include "predperm/permutation.hpp"

namespace predperm {

// A c-local permutation problem: the objective is a sum over positions of a
// cost that depends only on the elements at positions max(pos-c, 0)..pos.
template <class T>
class CLocalProblem {
 public:
  virtual ~CLocalProblem() = default;

  virtual std::size_t size() const = 0;
  virtual std::size_t locality() const = 0;
  virtual Sense sense() const = 0;

  // `window` lists the elements at positions max(pos-c, 0)..pos in order;
  // window.back() is the element at `pos`.
  virtual Extended<T> cost(std::size_t pos, std::span<const Element> window) const = 0;
};

template <class T>
Extended<T> eval_clocal(const CLocalProblem<T>& problem, const Permutation& sigma) {
  const std::size_t c = problem.locality();
  if (sigma.size() != problem.size()) throw std::invalid_argument("eval_clocal: permutation size mismatch");
  Extended<T> total(T{});
  const auto all = sigma.elements();
  for (std::size_t pos = 0; pos < all.size(); ++pos) {
    const std::size_t from = pos >= c ? pos - c : 0;
    total += problem.cost(pos, all.subspan(from, pos - from + 1));
  }
  return total;
}

struct CLocalOptions {
  std::size_t max_states = std::size_t{1} << 23;  // per layer
  double tie_tolerance = 1e-12;                   // floating objectives only
};

struct CLocalStats {
  std::vector<std::size_t> prefix_sets_per_layer;  // distinct prefix masks
  std::vector<std::size_t> states_per_layer;       // (prefix mask, tail) pairs
  std::size_t max_candidates = 0;                  // per state expansion
};

template <class T>
struct CLocalSolution {
  Permutation order;
  Extended<T> value;
  CLocalStats stats;
};

inline constexpr std::size_t kMaxLocality = 4;

namespace detail {

template <class T>
bool clocal_better(const Extended<T>& a, const Extended<T>& b, Sense sense, double tol) {
  if constexpr (std::is_floating_point_v<T>) {
    return better(a, b, sense, tol);
  } else {
    (void)tol;
    return better(a, b, sense);
  }
}

}  // namespace detail

// Exact optimum of a c-local objective over all permutations with max
// dislocation <= k. Forward DP over prefix length; a state is the set of
// placed elements (k members of the window [i-k, i+k-1], counting the
// virtual elements -k..-1 as placed) plus the last min(c, i) placed elements.
template <class T>
CLocalSolution<T> solve_window(const CLocalProblem<T>& problem, std::size_t k, const CLocalOptions& options = {}) {
  const std::size_t n = problem.size();
  const std::size_t c = problem.locality();
  const Sense sense = problem.sense();
  if (n == 0) throw std::invalid_argument("solve_window: empty problem");
  if (c < 1 || c > kMaxLocality) throw std::invalid_argument("solve_window: locality must be in [1, 4]");
  k = std::min(k, n - 1);
  if (k > 15) throw StateLimitExceeded("c-local window DP supports k <= 15");
  const std::size_t width = 2 * k;

  struct State {
    std::uint64_t mask;
    std::array<Element, kMaxLocality> tail;  // oldest first
    std::uint8_t tail_len;
  };
  struct Back {
    std::int32_t prev;
    std::uint8_t offset;
  };
  // Tail entries are stored as offsets e - (pos - k) in [0, 2k], 5 bits each.
  auto encode = [&](const State& s, std::size_t i) {
    std::uint64_t key = s.mask;
    for (std::size_t m = 0; m < s.tail_len; ++m) {
      const std::size_t pos = i - s.tail_len + m;
      const auto off = static_cast<std::uint64_t>(static_cast<long long>(s.tail[m]) - static_cast<long long>(pos) +
                                                  static_cast<long long>(k));
      key |= off << (32 + 5 * m);
    }
    return key;
  };

  CLocalStats stats;
  std::vector<State> states{State{(std::uint64_t{1} << k) - 1, {}, 0}};
  std::vector<Extended<T>> values{Extended<T>(T{})};
  std::vector<std::vector<Back>> backs(n);
  std::array<Element, kMaxLocality + 1> window{};

  for (std::size_t i = 0; i < n; ++i) {
    {
      std::unordered_set<std::uint64_t> distinct;
      for (const State& s : states) distinct.insert(s.mask);
      stats.prefix_sets_per_layer.push_back(distinct.size());
      stats.states_per_layer.push_back(states.size());
    }
    const long long base = static_cast<long long>(i) - static_cast<long long>(k);
    std::vector<State> next_states;
    std::vector<Extended<T>> next_values;
    std::vector<Back>& next_backs = backs[i];
    std::unordered_map<std::uint64_t, std::int32_t> slot;
    slot.reserve(states.size() * 2);

    for (std::size_t si = 0; si < states.size(); ++si) {
      const State& s = states[si];
      const bool forced = (s.mask & 1U) == 0;
      const long long lo = std::max<long long>(0, base);
      const long long hi = std::min<long long>(static_cast<long long>(n) - 1, static_cast<long long>(i + k));
      std::size_t candidates = 0;
      for (long long e = lo; e <= hi; ++e) {
        const auto bit = static_cast<std::size_t>(e - base);
        if (forced && bit != 0) break;
        if (bit < width && ((s.mask >> bit) & 1U)) continue;
        ++candidates;
        const auto elem = static_cast<Element>(e);
        std::size_t len = 0;
        const std::size_t keep = std::min<std::size_t>(s.tail_len, c);
        for (std::size_t m = s.tail_len - keep; m < s.tail_len; ++m) window[len++] = s.tail[m];
        window[len++] = elem;
        const Extended<T> total = values[si] + problem.cost(i, std::span<const Element>(window.data(), len));
        if (!total.is_finite()) continue;

        State ns;
        ns.mask = (s.mask | (std::uint64_t{1} << bit)) >> 1;
        ns.tail_len = static_cast<std::uint8_t>(std::min<std::size_t>(len, c));
        std::copy(window.begin() + static_cast<long>(len - ns.tail_len), window.begin() + static_cast<long>(len),
                  ns.tail.begin());
        const std::uint64_t key = encode(ns, i + 1);
        const auto [it, inserted] = slot.try_emplace(key, static_cast<std::int32_t>(next_states.size()));
        if (inserted) {
          if (next_states.size() >= options.max_states)
            throw StateLimitExceeded("c-local window DP layer exceeds " + std::to_string(options.max_states) +
                                     " states");
          next_states.push_back(ns);
          next_values.push_back(total);
          next_backs.push_back({static_cast<std::int32_t>(si), static_cast<std::uint8_t>(bit)});
        } else {
          const auto idx = static_cast<std::size_t>(it->second);
          if (detail::clocal_better(total, next_values[idx], sense, options.tie_tolerance)) {
            next_values[idx] = total;
            next_backs[idx] = {static_cast<std::int32_t>(si), static_cast<std::uint8_t>(bit)};
          }
        }
      }
      stats.max_candidates = std::max(stats.max_candidates, candidates);
    }
    states = std::move(next_states);
    values = std::move(next_values);
    if (states.empty()) throw InfeasibleWindow("no feasible permutation within window k=" + std::to_string(k));
  }

  // Several terminal states may remain (different tails); take the best.
  std::size_t best = 0;
  for (std::size_t si = 1; si < states.size(); ++si)
    if (detail::clocal_better(values[si], values[best], sense, options.tie_tolerance)) best = si;

  std::vector<Element> order(n);
  auto state = static_cast<std::int32_t>(best);
  for (std::size_t i = n; i-- > 0;) {
    const Back b = backs[i][static_cast<std::size_t>(state)];
    order[i] = static_cast<Element>(static_cast<long long>(i) - static_cast<long long>(k) + b.offset);
    state = b.prev;
  }
  return {Permutation(std::move(order)), values[best], std::move(stats)};
}

}  // namespace predperm
