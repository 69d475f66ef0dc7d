#include "predperm/dp_decomp.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_map>

#include "predperm/window_index.hpp"

namespace predperm {

IntValue evaluate(const DecomposableProblem& problem, const Permutation& sigma) {
  const std::size_t n = problem.size();
  if (sigma.size() != n) throw std::invalid_argument("evaluate: permutation size mismatch");
  const ElementSet none(n);
  return problem.evaluate_range(0, n - 1, none, none, sigma.elements());
}

namespace {

ElementSet set_of(std::size_t n, std::span<const Element> elems) {
  ElementSet s(n);
  for (Element e : elems) s.insert(e);
  return s;
}

IntValue range_value(const DecomposableProblem& p, const Permutation& sigma, std::size_t first,
                     std::size_t last) {
  const std::size_t n = p.size();
  const auto all = sigma.elements();
  const ElementSet left = set_of(n, all.subspan(0, first));
  const ElementSet right = set_of(n, all.subspan(last + 1));
  return p.evaluate_range(first, last, left, right, all.subspan(first, last - first + 1));
}

}  // namespace

bool check_decomposition(const DecomposableProblem& problem, const Permutation& sigma, std::size_t first,
                         std::size_t split, std::size_t last) {
  const std::size_t n = problem.size();
  if (sigma.size() != n) throw std::invalid_argument("check_decomposition: permutation size mismatch");
  if (!(first <= split && split < last && last < n))
    throw std::out_of_range("check_decomposition: need first <= split < last < n");
  const auto all = sigma.elements();
  const IntValue whole = range_value(problem, sigma, first, last);
  const IntValue lhs = range_value(problem, sigma, first, split);
  const IntValue rhs = range_value(problem, sigma, split + 1, last);
  const IntValue h = problem.combine(set_of(n, all.subspan(0, first)), set_of(n, all.subspan(last + 1)),
                                     set_of(n, all.subspan(first, split - first + 1)),
                                     set_of(n, all.subspan(split + 1, last - split)));
  return whole == lhs + rhs + h;
}

std::size_t decomp_key_bound(std::size_t k) {
  if (6 * k >= std::numeric_limits<std::size_t>::digits) return std::numeric_limits<std::size_t>::max();
  return std::size_t{1} << (6 * k);
}

namespace {

// ---------------------------------------------------------------------------
// Peel split: the recursion node (i, n-1) is keyed by the set of elements
// placed before position i. With the elements -k..-1 treated as virtually
// placed, that set always holds exactly k members of the window
// [i-k, i+k-1], so keys are k-subsets of 2k bits and index densely.

DecompSolution solve_peel(const DecomposableProblem& p, std::size_t k, const DecompOptions& options) {
  const std::size_t n = p.size();
  const Sense sense = p.sense();
  const std::size_t width = 2 * k;
  const KSubsetIndex index(width, k);
  if (index.count() > options.max_states)
    throw StateLimitExceeded("peel window DP needs " + std::to_string(index.count()) + " keys per node (k=" +
                             std::to_string(k) + "), limit " + std::to_string(options.max_states));

  struct Back {
    std::int32_t prev;
    std::uint8_t offset;  // e - (i - k)
  };

  DecompStats stats;
  std::vector<std::uint64_t> masks{(std::uint64_t{1} << k) - 1};
  std::vector<IntValue> values{IntValue(0)};
  std::vector<std::vector<Back>> backs(n);
  std::vector<std::int32_t> slot(index.count(), -1);

  ElementSet left(n), rest(n), single(n);
  const ElementSet empty(n);

  for (std::size_t i = 0; i < n; ++i) {
    stats.keys_per_node.push_back(masks.size());
    const long long base = static_cast<long long>(i) - static_cast<long long>(k);
    std::vector<std::uint64_t> next_masks;
    std::vector<IntValue> next_values;
    std::vector<Back>& next_backs = backs[i];
    std::vector<std::size_t> touched;

    for (std::size_t si = 0; si < masks.size(); ++si) {
      const std::uint64_t mask = masks[si];
      left.clear();
      if (base > 0) left.insert_range(0, static_cast<Element>(base));
      for (std::uint64_t w = mask; w; w &= w - 1) {
        const long long e = base + std::countr_zero(w);
        if (e >= 0) left.insert(static_cast<Element>(e));
      }
      rest = left.complement();

      const bool forced = (mask & 1U) == 0;
      const long long lo = std::max<long long>(0, base);
      const long long hi = std::min<long long>(static_cast<long long>(n) - 1, static_cast<long long>(i + k));
      for (long long e = lo; e <= hi; ++e) {
        const auto bit = static_cast<std::size_t>(e - base);
        if (forced && bit != 0) break;
        if (bit < width && ((mask >> bit) & 1U)) continue;
        const auto elem = static_cast<Element>(e);
        rest.erase(elem);
        IntValue term = p.leaf(i, elem, left, rest);
        if (i + 1 < n && term.is_finite()) {
          single.clear();
          single.insert(elem);
          term += p.combine(left, empty, single, rest);
        }
        rest.insert(elem);
        const IntValue total = values[si] + term;
        if (!total.is_finite()) continue;  // infeasible prefixes cannot recover

        const std::uint64_t next = (mask | (std::uint64_t{1} << bit)) >> 1;
        const std::size_t r = index.rank(next);
        if (slot[r] < 0) {
          slot[r] = static_cast<std::int32_t>(next_masks.size());
          touched.push_back(r);
          next_masks.push_back(next);
          next_values.push_back(total);
          next_backs.push_back({static_cast<std::int32_t>(si), static_cast<std::uint8_t>(bit)});
        } else if (better(total, next_values[static_cast<std::size_t>(slot[r])], sense)) {
          next_values[static_cast<std::size_t>(slot[r])] = total;
          next_backs[static_cast<std::size_t>(slot[r])] = {static_cast<std::int32_t>(si),
                                                           static_cast<std::uint8_t>(bit)};
        }
      }
    }
    for (std::size_t r : touched) slot[r] = -1;
    masks = std::move(next_masks);
    values = std::move(next_values);
    if (masks.empty()) throw InfeasibleWindow("no feasible permutation within window k=" + std::to_string(k));
  }

  stats.nodes = n;
  for (std::size_t c : stats.keys_per_node) {
    stats.total_keys += c;
    stats.max_keys_per_node = std::max(stats.max_keys_per_node, c);
  }

  // Exactly one terminal key: every real element placed.
  std::vector<Element> order(n);
  std::int32_t state = 0;
  for (std::size_t i = n; i-- > 0;) {
    const Back b = backs[i][static_cast<std::size_t>(state)];
    order[i] = static_cast<Element>(static_cast<long long>(i) - static_cast<long long>(k) + b.offset);
    state = b.prev;
  }
  return {Permutation(std::move(order)), values.front(), std::move(stats)};
}

// ---------------------------------------------------------------------------
// Midpoint split: balanced recursion; a node (i, j) is keyed by the labels
// (L, M or R) of the elements in its two boundary windows. Every element
// outside the windows has a forced label.

enum class Label : std::uint8_t { left, middle, right };

struct Key {
  std::uint64_t left;
  std::uint64_t middle;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& key) const noexcept {
    return std::hash<std::uint64_t>{}(key.left * 0x9E3779B97F4A7C15ULL ^ key.middle);
  }
};

struct Entry {
  IntValue value;
  std::uint64_t choice = 0;  // subset of the free list sent to the left child
};

struct Node {
  std::size_t first = 0, last = 0, split = 0;
  int left_child = -1, right_child = -1;
  std::vector<Element> window;
  std::unordered_map<Key, Entry, KeyHash> table;
};

class MidpointSolver {
 public:
  MidpointSolver(const DecomposableProblem& p, std::size_t k, const DecompOptions& options)
      : p_(p), n_(p.size()), k_(k), options_(options) {
    if (4 * k_ > 64) throw StateLimitExceeded("midpoint window DP supports k <= 16");
  }

  DecompSolution run() {
    const int root = build(0, n_ - 1);
    for (Node& node : nodes_) fill(node);
    DecompStats stats;
    stats.nodes = nodes_.size();
    for (const Node& node : nodes_) {
      stats.keys_per_node.push_back(node.table.size());
      stats.total_keys += node.table.size();
      stats.max_keys_per_node = std::max(stats.max_keys_per_node, node.table.size());
    }
    const Node& top = nodes_[static_cast<std::size_t>(root)];
    Key root_key{0, (top.window.size() == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << top.window.size()) - 1};
    const auto it = top.table.find(root_key);
    if (it == top.table.end() || !it->second.value.is_finite())
      throw InfeasibleWindow("no feasible permutation within window k=" + std::to_string(k_));
    std::vector<Element> order(n_);
    reconstruct(root, root_key, order);
    return {Permutation(std::move(order)), it->second.value, std::move(stats)};
  }

 private:
  // Post-order construction, so children precede parents in nodes_.
  int build(std::size_t first, std::size_t last) {
    Node node;
    node.first = first;
    node.last = last;
    if (first < last) {
      node.split = (first + last) / 2;
      node.left_child = build(first, node.split);
      node.right_child = build(node.split + 1, last);
    }
    node.window = window_of(first, last);
    nodes_.push_back(std::move(node));
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::vector<Element> window_of(std::size_t first, std::size_t last) const {
    const long long k = static_cast<long long>(k_);
    const long long i = static_cast<long long>(first), j = static_cast<long long>(last);
    std::vector<Element> w;
    for (long long e = std::max(0LL, i - k); e <= std::min<long long>(n_ - 1, j + k); ++e) {
      if (e <= i + k - 1 || e >= j - k + 1) w.push_back(static_cast<Element>(e));
    }
    return w;
  }

  bool allowed(const Node& node, Element e, Label label) const {
    const long long k = static_cast<long long>(k_);
    const long long i = static_cast<long long>(node.first), j = static_cast<long long>(node.last);
    const long long x = e;
    switch (label) {
      case Label::left: return i >= 1 && x <= i - 1 + k;
      case Label::middle: return x >= i - k && x <= j + k;
      default: return j + 1 < static_cast<long long>(n_) && x >= j + 1 - k;
    }
  }

  // Label of an element that lies outside the node's windows.
  Label forced_label(const Node& node, Element e) const {
    const long long k = static_cast<long long>(k_);
    const long long x = e;
    if (x < static_cast<long long>(node.first) - k) return Label::left;
    if (x > static_cast<long long>(node.last) + k) return Label::right;
    return Label::middle;
  }

  void expand(const Node& node, const Key& key, ElementSet& left, ElementSet& middle, ElementSet& right) const {
    left = ElementSet(n_);
    middle = ElementSet(n_);
    right = ElementSet(n_);
    std::size_t wi = 0;
    for (Element e = 0; e < n_; ++e) {
      Label label;
      if (wi < node.window.size() && node.window[wi] == e) {
        label = ((key.left >> wi) & 1U) ? Label::left : ((key.middle >> wi) & 1U) ? Label::middle : Label::right;
        ++wi;
      } else {
        label = forced_label(node, e);
      }
      (label == Label::left ? left : label == Label::middle ? middle : right).insert(e);
    }
  }

  Key project(const Node& node, const ElementSet& left, const ElementSet& middle) const {
    Key key{0, 0};
    for (std::size_t wi = 0; wi < node.window.size(); ++wi) {
      const Element e = node.window[wi];
      if (left.contains(e)) key.left |= std::uint64_t{1} << wi;
      else if (middle.contains(e)) key.middle |= std::uint64_t{1} << wi;
    }
    return key;
  }

  // All keys with consistent labels and exact set cardinalities.
  std::vector<Key> enumerate_keys(const Node& node) const {
    const long long k = static_cast<long long>(k_);
    const long long i = static_cast<long long>(node.first), j = static_cast<long long>(node.last);
    long long forced_left = 0, forced_middle = 0;
    for (Element e = 0; e < n_; ++e) {
      if (std::binary_search(node.window.begin(), node.window.end(), e)) continue;
      const Label label = forced_label(node, e);
      forced_left += label == Label::left;
      forced_middle += label == Label::middle;
    }
    (void)k;
    const long long need_left = i - forced_left;
    const long long need_middle = (j - i + 1) - forced_middle;
    std::vector<Key> keys;
    if (need_left < 0 || need_middle < 0) return keys;
    const std::size_t w = node.window.size();
    Key key{0, 0};
    auto dfs = [&](auto&& self, std::size_t wi, long long nl, long long nm) -> void {
      const long long remaining = static_cast<long long>(w - wi);
      if (nl + nm > remaining) return;
      if (wi == w) {
        if (nl == 0 && nm == 0) {
          keys.push_back(key);
          if (keys.size() > options_.max_states)
            throw StateLimitExceeded("midpoint window DP node exceeds " + std::to_string(options_.max_states) +
                                     " keys");
        }
        return;
      }
      const Element e = node.window[wi];
      const std::uint64_t bit = std::uint64_t{1} << wi;
      if (nl > 0 && allowed(node, e, Label::left)) {
        key.left |= bit;
        self(self, wi + 1, nl - 1, nm);
        key.left &= ~bit;
      }
      if (nm > 0 && allowed(node, e, Label::middle)) {
        key.middle |= bit;
        self(self, wi + 1, nl, nm - 1);
        key.middle &= ~bit;
      }
      if (allowed(node, e, Label::right)) self(self, wi + 1, nl, nm);
    };
    dfs(dfs, 0, need_left, need_middle);
    return keys;
  }

  struct Split {
    std::vector<Element> free;
    ElementSet forced_left;
    std::size_t need = 0;
    bool possible = false;
  };

  Split split_of(const Node& node, const ElementSet& middle) const {
    Split sp;
    sp.forced_left = ElementSet(n_);
    const long long k = static_cast<long long>(k_);
    const long long s = static_cast<long long>(node.split);
    std::size_t forced = 0;
    middle.for_each([&](Element e) {
      const long long x = e;
      if (x < s + 1 - k) {
        sp.forced_left.insert(e);
        ++forced;
      } else if (x <= s + k) {
        sp.free.push_back(e);
      }
    });
    const std::size_t left_size = node.split - node.first + 1;
    sp.possible = forced <= left_size && left_size - forced <= sp.free.size();
    sp.need = sp.possible ? left_size - forced : 0;
    return sp;
  }

  void fill(Node& node) {
    const Sense sense = p_.sense();
    ElementSet left, middle, right;
    for (const Key& key : enumerate_keys(node)) {
      expand(node, key, left, middle, right);
      Entry best{IntValue::infeasible(sense), 0};
      if (node.left_child < 0) {
        const Element e = middle.members().front();
        best.value = p_.leaf(node.first, e, left, right);
        node.table.emplace(key, best);
        continue;
      }
      const Node& lc = nodes_[static_cast<std::size_t>(node.left_child)];
      const Node& rc = nodes_[static_cast<std::size_t>(node.right_child)];
      const Split sp = split_of(node, middle);
      bool found = false;
      if (sp.possible) {
        for_each_subset(sp.free.size(), sp.need, [&](std::uint64_t choice) {
          ElementSet part_left = sp.forced_left;
          for (std::size_t b = 0; b < sp.free.size(); ++b)
            if ((choice >> b) & 1U) part_left.insert(sp.free[b]);
          const ElementSet part_right = middle - part_left;
          const auto lit = lc.table.find(project(lc, left, part_left));
          if (lit == lc.table.end()) return;
          const auto rit = rc.table.find(project(rc, left | part_left, part_right));
          if (rit == rc.table.end()) return;
          IntValue total = lit->second.value + rit->second.value;
          if (total.is_finite()) total += p_.combine(left, right, part_left, part_right);
          if (!found || better(total, best.value, sense)) {
            best = {total, choice};
            found = true;
          }
        });
      }
      node.table.emplace(key, best);
    }
  }

  template <class F>
  static void for_each_subset(std::size_t width, std::size_t count, F&& f) {
    if (count == 0) {
      f(std::uint64_t{0});
      return;
    }
    if (count > width) return;
    const std::uint64_t limit = width == 64 ? 0 : (std::uint64_t{1} << width);
    std::uint64_t x = (count == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << count) - 1;
    while (true) {
      f(x);
      // Gosper's hack: next integer with the same popcount.
      const std::uint64_t c = x & (~x + 1);
      const std::uint64_t r = x + c;
      if (r == 0) return;
      x = (((r ^ x) >> 2) / c) | r;
      if (limit != 0 && x >= limit) return;
    }
  }

  void reconstruct(int index, const Key& key, std::vector<Element>& order) const {
    const Node& node = nodes_[static_cast<std::size_t>(index)];
    ElementSet left, middle, right;
    expand(node, key, left, middle, right);
    if (node.left_child < 0) {
      order[node.first] = middle.members().front();
      return;
    }
    const Entry& entry = node.table.at(key);
    const Split sp = split_of(node, middle);
    ElementSet part_left = sp.forced_left;
    for (std::size_t b = 0; b < sp.free.size(); ++b)
      if ((entry.choice >> b) & 1U) part_left.insert(sp.free[b]);
    const ElementSet part_right = middle - part_left;
    const Node& lc = nodes_[static_cast<std::size_t>(node.left_child)];
    const Node& rc = nodes_[static_cast<std::size_t>(node.right_child)];
    reconstruct(node.left_child, project(lc, left, part_left), order);
    reconstruct(node.right_child, project(rc, left | part_left, part_right), order);
  }

  const DecomposableProblem& p_;
  std::size_t n_;
  std::size_t k_;
  DecompOptions options_;
  std::vector<Node> nodes_;
};

}  // namespace

DecompSolution solve_window(const DecomposableProblem& problem, std::size_t k, const DecompOptions& options) {
  const std::size_t n = problem.size();
  if (n == 0) throw std::invalid_argument("solve_window: empty problem");
  k = std::min(k, n - 1);
  if (options.split == SplitPolicy::midpoint) return MidpointSolver(problem, k, options).run();
  return solve_peel(problem, k, options);
}

}  // namespace predperm
