#include "predperm/warmstart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>

namespace predperm {

std::size_t sort_stage_cap(std::size_t n, double c1) {
  if (n < 2 || c1 <= 0.0) return 0;
  return static_cast<std::size_t>(std::floor(c1 * static_cast<double>(n) * std::log2(static_cast<double>(n))));
}

std::size_t sort_min_window(std::size_t n) {
  if (n < 2) return 2;
  const auto lg = static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n))));
  return std::max<std::size_t>(2, 2 * lg);
}

std::size_t warm_start_query_cap(std::size_t n, double c1, std::size_t k_ws) {
  return sort_stage_cap(n, c1) + n * (2 * k_ws + 1);
}

namespace {

// Oracle access limited to a number of new pairs for the current stage.
class StageQueries {
 public:
  StageQueries(QueryHandle& oracle, std::size_t cap) : oracle_(oracle), start_(oracle.queries_used()), cap_(cap) {}

  // Cached or newly asked answer; nullopt once the stage cap is spent.
  std::optional<int> ask(Element a, Element b) {
    if (auto c = oracle_.cached(a, b)) return c;
    if (spent()) return std::nullopt;
    return oracle_.query(a, b);
  }

  bool spent() const { return oracle_.queries_used() - start_ >= cap_; }

 private:
  QueryHandle& oracle_;
  std::size_t start_;
  std::size_t cap_;
};

// One round: each element estimates its position from its best cut against
// up to `sample` elements within `width` of it; all move at once.
void best_cut_round(StageQueries& queries, std::vector<Element>& order, std::size_t width, std::size_t sample,
                    std::mt19937_64& rng) {
  const std::size_t n = order.size();
  std::vector<std::pair<double, std::size_t>> estimate(n);
  std::vector<std::size_t> candidates;
  std::vector<int> answers;
  std::vector<std::size_t> used;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t a = p >= width ? p - width : 0;
    const std::size_t b = std::min(n, p + width + 1);
    candidates.clear();
    for (std::size_t u = a; u < b; ++u)
      if (u != p) candidates.push_back(u);
    const std::size_t take = std::min(sample, candidates.size());
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
      std::swap(candidates[i], candidates[pick(rng)]);
    }
    std::sort(candidates.begin(), candidates.begin() + static_cast<long>(take));

    used.clear();
    answers.clear();
    for (std::size_t i = 0; i < take; ++i) {
      const auto ans = queries.ask(order[candidates[i]], order[p]);
      if (!ans) continue;
      used.push_back(candidates[i]);
      answers.push_back(*ans);
    }

    // Cut c puts x after the first c sampled elements.
    int score = 0;
    for (int q : answers) score -= q;
    int best = score;
    std::vector<std::size_t> ties{0};
    for (std::size_t c = 1; c <= answers.size(); ++c) {
      score += 2 * answers[c - 1];
      if (score > best) {
        best = score;
        ties.assign(1, c);
      } else if (score == best) {
        ties.push_back(c);
      }
    }
    auto location = [&](std::size_t c) {
      const double lo = c == 0 ? static_cast<double>(a) - 1.0 : static_cast<double>(used[c - 1]);
      const double hi = c == used.size() ? static_cast<double>(b) : static_cast<double>(used[c]);
      return (lo + hi) / 2.0;
    };
    double chosen = static_cast<double>(p);
    if (!used.empty()) {
      chosen = location(ties.front());
      for (std::size_t c : ties)
        if (std::abs(location(c) - static_cast<double>(p)) < std::abs(chosen - static_cast<double>(p)))
          chosen = location(c);
    }
    estimate[p] = {chosen, p};
  }
  std::sort(estimate.begin(), estimate.end());
  std::vector<Element> next(n);
  for (std::size_t i = 0; i < n; ++i) next[i] = order[estimate[i].second];
  order.swap(next);
}

// Odd-even transposition passes on adjacent pairs until nothing moves.
void settle(StageQueries& queries, std::vector<Element>& order) {
  const std::size_t n = order.size();
  std::size_t quiet = 0;
  for (std::size_t pass = 0; pass < 2 * n && quiet < 2; ++pass) {
    bool moved = false;
    for (std::size_t p = pass % 2; p + 1 < n; p += 2) {
      const auto ans = queries.ask(order[p], order[p + 1]);
      if (!ans) return;
      if (*ans < 0) {
        std::swap(order[p], order[p + 1]);
        moved = true;
      }
    }
    quiet = moved ? 0 : quiet + 1;
  }
}

}  // namespace

Permutation noisy_sort(QueryHandle& oracle, const WarmStartOptions& options) {
  const std::size_t n = oracle.n();
  if (n == 1) return Permutation::identity(1);
  const std::size_t cap = sort_stage_cap(n, options.c1);
  if (cap == 0) throw BudgetExhausted("sort stage budget is zero");
  StageQueries queries(oracle, cap);
  std::mt19937_64 rng(options.seed);

  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t narrow = sort_min_window(n);
  const double shrink = std::max(options.shrink, 1.01);
  for (auto width = static_cast<double>(n); width > static_cast<double>(narrow) && !queries.spent();
       width /= shrink)
    best_cut_round(queries, order, static_cast<std::size_t>(width), options.sample, rng);
  for (std::size_t r = 0; r < options.final_rounds && !queries.spent(); ++r)
    best_cut_round(queries, order, narrow, 2 * narrow, rng);
  settle(queries, order);
  return Permutation(std::move(order));
}

std::int64_t answered_score(const QueryHandle& oracle, const Permutation& order) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (auto q = oracle.cached(order[i], order[j])) total += *q;
  return total;
}

ScoreProblem::ScoreProblem(std::size_t n, const std::function<int(Element, Element)>& q)
    : plus_(n, ElementSet(n)), minus_(n, ElementSet(n)) {
  for (Element u = 0; u < n; ++u)
    for (Element v = 0; v < n; ++v) {
      if (u == v) continue;
      const int a = q(u, v);
      if (a > 0) plus_[u].insert(v);
      else if (a < 0) minus_[u].insert(v);
    }
}

IntValue ScoreProblem::combine(const ElementSet&, const ElementSet&, const ElementSet& left_part,
                               const ElementSet& right_part) const {
  std::int64_t total = 0;
  left_part.for_each([&](Element u) {
    total += static_cast<std::int64_t>(plus_[u].intersection_size(right_part)) -
             static_cast<std::int64_t>(minus_[u].intersection_size(right_part));
  });
  return total;
}

IntValue ScoreProblem::evaluate_range(std::size_t, std::size_t, const ElementSet&, const ElementSet&,
                                      std::span<const Element> sub) const {
  std::int64_t total = 0;
  for (std::size_t a = 0; a < sub.size(); ++a)
    for (std::size_t b = a + 1; b < sub.size(); ++b) {
      if (plus_[sub[a]].contains(sub[b])) ++total;
      else if (minus_[sub[a]].contains(sub[b])) --total;
    }
  return total;
}

ScoredOrder window_score_refine(QueryHandle& oracle, const Permutation& initial, std::size_t k_ws,
                                const DecompOptions& options) {
  const std::size_t n = initial.size();
  if (n != oracle.n()) throw std::invalid_argument("window_score_refine: size mismatch");
  const std::size_t before = oracle.queries_used();
  const std::size_t k = std::min(k_ws, n - 1);
  if (k == 0) return {initial, answered_score(oracle, initial), 0};

  const std::size_t reach = std::min(2 * k + 1, n - 1);
  for (std::size_t d = 1; d <= reach; ++d)
    for (std::size_t p = 0; p + d < n; ++p) oracle.query(initial[p], initial[p + d]);

  const ScoreProblem problem(n, [&](Element x, Element y) { return oracle.cached(initial[x], initial[y]).value_or(0); });
  const DecompSolution sol = solve_window(problem, k, options);
  std::vector<Element> order(n);
  for (std::size_t p = 0; p < n; ++p) order[p] = initial[sol.order[p]];
  Permutation out(std::move(order));
  const std::int64_t score = answered_score(oracle, out);
  return {std::move(out), score, oracle.queries_used() - before};
}

ScoredOrder warm_start(QueryHandle& oracle, std::size_t k_ws, const WarmStartOptions& options) {
  const std::size_t before = oracle.queries_used();
  const Permutation initial = noisy_sort(oracle, options);
  ScoredOrder out = window_score_refine(oracle, initial, k_ws, options.refine);
  out.queries_spent = oracle.queries_used() - before;
  return out;
}

}  // namespace predperm
