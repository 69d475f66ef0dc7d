#pragma once

// Reference objectives written from the problem definitions, independent of
// the library's adapters, plus exhaustive search over them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "predperm/problems.hpp"

namespace reference {

using predperm::Element;

constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<std::size_t> position_of(const std::vector<Element>& order) {
  std::vector<std::size_t> pos(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;
  return pos;
}

inline double objective(const predperm::MasInstance& m, const std::vector<Element>& order) {
  const auto pos = position_of(order);
  double total = 0;
  for (std::size_t a = 0; a < m.arcs.size(); ++a)
    if (pos[m.arcs[a].first] < pos[m.arcs[a].second])
      total += m.weights.empty() ? 1.0 : static_cast<double>(m.weights[a]);
  return total;
}

inline double objective(const predperm::MlaInstance& m, const std::vector<Element>& order) {
  const auto pos = position_of(order);
  double total = 0;
  for (auto [u, v] : m.edges) total += std::abs(static_cast<double>(pos[u]) - static_cast<double>(pos[v]));
  return total;
}

inline double objective(const predperm::ScheduleInstance& s, const std::vector<Element>& order) {
  const auto pos = position_of(order);
  for (auto [u, v] : s.prec)
    if (pos[u] > pos[v]) return kInf;
  double clock = 0, total = 0;
  for (Element e : order) total += (clock += static_cast<double>(s.proc[e]));
  return total;
}

inline double objective(const predperm::TspInstance& t, const std::vector<Element>& order) {
  double total = 0;
  for (std::size_t p = 0; p + 1 < order.size(); ++p) total += static_cast<double>(t.d(order[p], order[p + 1]));
  return total;
}

// Welfare sum_i v_i lambda_{pos(i)} Q_i with
// Q_i = 1 - (1 - q_i) prod_{j above i, pos(i) - pos(j) <= c} (1 - q_j w_ji(pos(i) - pos(j))).
inline double objective(const predperm::AuctionInstance& a, const std::vector<Element>& order) {
  const auto pos = position_of(order);
  double total = 0;
  for (Element i = 0; i < a.n; ++i) {
    double keep = 1.0;
    for (Element j = 0; j < a.n; ++j) {
      if (pos[j] >= pos[i]) continue;
      const std::size_t d = pos[i] - pos[j];
      if (d <= a.c) keep *= 1.0 - a.q[j] * a.influence(j, i, d);
    }
    total += a.v[i] * a.lambda[pos[i]] * (1.0 - (1.0 - a.q[i]) * keep);
  }
  return total;
}

inline double objective(const predperm::Instance& inst, const std::vector<Element>& order) {
  return std::visit([&](const auto& x) { return objective(x, order); }, inst);
}

inline bool maximizing(const predperm::Instance& inst) {
  return std::holds_alternative<predperm::MasInstance>(inst) ||
         std::holds_alternative<predperm::AuctionInstance>(inst);
}

// Best value over all orders with |position - element| <= k for every
// element (k >= n - 1: all orders). Infeasible schedules are +inf.
inline double best_value(const predperm::Instance& inst, std::size_t k) {
  const std::size_t n = predperm::size_of(inst);
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  const bool max = maximizing(inst);
  double best = max ? -kInf : kInf;
  do {
    bool inside = true;
    for (std::size_t p = 0; p < n && inside; ++p)
      inside = (order[p] > p ? order[p] - p : p - order[p]) <= k;
    if (!inside) continue;
    const double v = objective(inst, order);
    best = max ? std::max(best, v) : std::min(best, v);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace reference
