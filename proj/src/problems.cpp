#include "predperm/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace predperm {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<Element> positions(const Permutation& sigma) {
  std::vector<Element> pos(sigma.size());
  for (std::size_t p = 0; p < sigma.size(); ++p) pos[sigma[p]] = static_cast<Element>(p);
  return pos;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

void check_size(std::size_t n, const Permutation& sigma) {
  require(sigma.size() == n, "permutation size " + std::to_string(sigma.size()) + " != instance size " +
                                 std::to_string(n));
}

std::vector<ElementSet> adjacency(std::size_t n, const std::vector<Arc>& arcs, bool symmetric) {
  std::vector<ElementSet> adj(n, ElementSet(n));
  for (auto [u, v] : arcs) {
    adj[u].insert(v);
    if (symmetric) adj[v].insert(u);
  }
  return adj;
}

// -- MAS ---------------------------------------------------------------------

class MasProblem final : public DecomposableProblem {
 public:
  explicit MasProblem(const MasInstance& inst) : n_(inst.n), out_(adjacency(inst.n, inst.arcs, false)) {
    if (!inst.weights.empty()) {
      weight_.assign(n_ * n_, 0);
      for (std::size_t a = 0; a < inst.arcs.size(); ++a)
        weight_[inst.arcs[a].first * n_ + inst.arcs[a].second] = inst.weights[a];
    }
  }

  std::size_t size() const override { return n_; }
  Sense sense() const override { return Sense::maximize; }

  IntValue leaf(std::size_t, Element, const ElementSet&, const ElementSet&) const override { return 0; }

  IntValue combine(const ElementSet&, const ElementSet&, const ElementSet& left_part,
                   const ElementSet& right_part) const override {
    std::int64_t total = 0;
    left_part.for_each([&](Element u) {
      if (weight_.empty()) {
        total += static_cast<std::int64_t>(out_[u].intersection_size(right_part));
      } else {
        (out_[u] & right_part).for_each([&](Element v) { total += weight_[u * n_ + v]; });
      }
    });
    return total;
  }

  IntValue evaluate_range(std::size_t, std::size_t, const ElementSet&, const ElementSet&,
                          std::span<const Element> sub) const override {
    std::int64_t total = 0;
    for (std::size_t a = 0; a < sub.size(); ++a)
      for (std::size_t b = a + 1; b < sub.size(); ++b)
        if (out_[sub[a]].contains(sub[b])) total += weight_.empty() ? 1 : weight_[sub[a] * n_ + sub[b]];
    return total;
  }

 private:
  std::size_t n_;
  std::vector<ElementSet> out_;
  std::vector<std::int64_t> weight_;
};

// -- MLA ---------------------------------------------------------------------
// g on [i, j] charges internal edges fully, edges into L by (r - i) and
// edges into R by (j - l); combine adds the missing cut corrections.

class MlaProblem final : public DecomposableProblem {
 public:
  explicit MlaProblem(const MlaInstance& inst) : n_(inst.n), adj_(adjacency(inst.n, inst.edges, true)) {}

  std::size_t size() const override { return n_; }
  Sense sense() const override { return Sense::minimize; }

  IntValue leaf(std::size_t, Element, const ElementSet&, const ElementSet&) const override { return 0; }

  IntValue combine(const ElementSet& left, const ElementSet& right, const ElementSet& left_part,
                   const ElementSet& right_part) const override {
    const auto left_size = static_cast<std::int64_t>(left_part.size());
    const auto right_size = static_cast<std::int64_t>(right_part.size());
    return cut(left_part, right_part) + left_size * cut(left, right_part) + right_size * cut(right, left_part);
  }

  IntValue evaluate_range(std::size_t, std::size_t, const ElementSet& left, const ElementSet& right,
                          std::span<const Element> sub) const override {
    std::int64_t total = 0;
    const std::size_t len = sub.size();
    for (std::size_t a = 0; a < len; ++a) {
      const Element x = sub[a];
      for (std::size_t b = a + 1; b < len; ++b)
        if (adj_[x].contains(sub[b])) total += static_cast<std::int64_t>(b - a);
      total += static_cast<std::int64_t>(a) * static_cast<std::int64_t>(adj_[x].intersection_size(left));
      total += static_cast<std::int64_t>(len - 1 - a) * static_cast<std::int64_t>(adj_[x].intersection_size(right));
    }
    return total;
  }

 private:
  std::int64_t cut(const ElementSet& a, const ElementSet& b) const {
    std::int64_t total = 0;
    a.for_each([&](Element u) { total += static_cast<std::int64_t>(adj_[u].intersection_size(b)); });
    return total;
  }

  std::size_t n_;
  std::vector<ElementSet> adj_;
};

// -- 1|prec|sum C_j ------------------------------------------------------------

class ScheduleProblem final : public DecomposableProblem {
 public:
  explicit ScheduleProblem(const ScheduleInstance& inst) : n_(inst.n), proc_(inst.proc), pred_(n_, ElementSet(n_)) {
    for (auto [u, v] : inst.prec) pred_[v].insert(u);
    word_sum_.assign((n_ + 63) / 64, 0);
    for (std::size_t e = 0; e < n_; ++e) word_sum_[e / 64] += proc_[e];
  }

  std::size_t size() const override { return n_; }
  Sense sense() const override { return Sense::minimize; }

  IntValue leaf(std::size_t, Element e, const ElementSet& left, const ElementSet&) const override {
    if (!pred_[e].is_subset_of(left)) return IntValue::pos_inf();
    return load(left) + proc_[e];
  }

  // Completion times are fully charged at the leaves, and a precedence
  // violated across the split already made the later leaf infinite.
  IntValue combine(const ElementSet&, const ElementSet&, const ElementSet&, const ElementSet&) const override {
    return 0;
  }

  IntValue evaluate_range(std::size_t, std::size_t, const ElementSet& left, const ElementSet&,
                          std::span<const Element> sub) const override {
    ElementSet placed = left;
    std::int64_t clock = load(left);
    std::int64_t total = 0;
    for (Element x : sub) {
      if (!pred_[x].is_subset_of(placed)) return IntValue::pos_inf();
      clock += proc_[x];
      total += clock;
      placed.insert(x);
    }
    return total;
  }

 private:
  std::int64_t load(const ElementSet& set) const {
    std::int64_t total = 0;
    const auto& words = set.words();
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (words[i] == ~std::uint64_t{0}) {
        total += word_sum_[i];
      } else {
        for (std::uint64_t w = words[i]; w; w &= w - 1) total += proc_[i * 64 + static_cast<std::size_t>(std::countr_zero(w))];
      }
    }
    return total;
  }

  std::size_t n_;
  std::vector<std::int64_t> proc_;
  std::vector<ElementSet> pred_;
  std::vector<std::int64_t> word_sum_;
};

// -- c-local adapters ----------------------------------------------------------

class TspProblem final : public CLocalProblem<std::int64_t> {
 public:
  explicit TspProblem(const TspInstance& inst) : inst_(inst) {}
  std::size_t size() const override { return inst_.n; }
  std::size_t locality() const override { return 1; }
  Sense sense() const override { return Sense::minimize; }
  IntValue cost(std::size_t, std::span<const Element> window) const override {
    if (window.size() < 2) return 0;
    return inst_.d(window[window.size() - 2], window.back());
  }

 private:
  TspInstance inst_;
};

double auction_term(const AuctionInstance& inst, std::size_t slot, std::span<const Element> window) {
  const Element ad = window.back();
  const std::size_t last = window.size() - 1;
  double keep = 1.0;
  for (std::size_t m = 0; m < last; ++m) {
    const Element above = window[m];
    keep *= 1.0 - inst.q[above] * inst.influence(above, ad, last - m);
  }
  const double ctr = 1.0 - (1.0 - inst.q[ad]) * keep;
  return inst.v[ad] * inst.lambda[slot] * ctr;
}

class AuctionProblem final : public CLocalProblem<double> {
 public:
  explicit AuctionProblem(const AuctionInstance& inst) : inst_(inst) {}
  std::size_t size() const override { return inst_.n; }
  std::size_t locality() const override { return inst_.c; }
  Sense sense() const override { return Sense::maximize; }
  RealValue cost(std::size_t pos, std::span<const Element> window) const override {
    return auction_term(inst_, pos, window);
  }

 private:
  AuctionInstance inst_;
};

}  // namespace

// -----------------------------------------------------------------------------

std::size_t size_of(const Instance& instance) {
  return std::visit([](const auto& inst) { return inst.n; }, instance);
}

std::string kind_name(const Instance& instance) {
  return std::visit(Overloaded{[](const MasInstance&) { return std::string("mas"); },
                               [](const MlaInstance&) { return std::string("mla"); },
                               [](const ScheduleInstance&) { return std::string("schedule"); },
                               [](const TspInstance&) { return std::string("tsp"); },
                               [](const AuctionInstance&) { return std::string("auction"); }},
                    instance);
}

Sense sense_of(const Instance& instance) {
  return std::holds_alternative<MasInstance>(instance) || std::holds_alternative<AuctionInstance>(instance)
             ? Sense::maximize
             : Sense::minimize;
}

bool is_decomposable(const Instance& instance) {
  return std::holds_alternative<MasInstance>(instance) || std::holds_alternative<MlaInstance>(instance) ||
         std::holds_alternative<ScheduleInstance>(instance);
}

namespace {

void validate_pairs(std::size_t n, const std::vector<Arc>& arcs, bool unordered, const char* what) {
  std::set<Arc> seen;
  for (auto [u, v] : arcs) {
    require(u < n && v < n, std::string(what) + " endpoint out of range");
    require(u != v, std::string(what) + " self-loop");
    const Arc key = unordered ? Arc{std::min(u, v), std::max(u, v)} : Arc{u, v};
    require(seen.insert(key).second, std::string("duplicate ") + what);
  }
}

}  // namespace

void validate(const Instance& instance) {
  std::visit(Overloaded{
                 [](const MasInstance& inst) {
                   require(inst.n >= 1, "n must be >= 1");
                   validate_pairs(inst.n, inst.arcs, false, "arc");
                   require(inst.weights.empty() || inst.weights.size() == inst.arcs.size(),
                           "weights must match arcs");
                   for (auto w : inst.weights) require(w >= 0, "arc weights must be non-negative");
                 },
                 [](const MlaInstance& inst) {
                   require(inst.n >= 1, "n must be >= 1");
                   validate_pairs(inst.n, inst.edges, true, "edge");
                 },
                 [](const ScheduleInstance& inst) {
                   require(inst.n >= 1, "n must be >= 1");
                   require(inst.proc.size() == inst.n, "proc must have n entries");
                   for (auto p : inst.proc) require(p > 0, "processing times must be positive");
                   validate_pairs(inst.n, inst.prec, false, "precedence");
                   std::vector<std::size_t> indeg(inst.n, 0);
                   std::vector<std::vector<Element>> succ(inst.n);
                   for (auto [u, v] : inst.prec) {
                     succ[u].push_back(v);
                     ++indeg[v];
                   }
                   std::queue<Element> ready;
                   for (Element e = 0; e < inst.n; ++e)
                     if (indeg[e] == 0) ready.push(e);
                   std::size_t seen = 0;
                   while (!ready.empty()) {
                     const Element u = ready.front();
                     ready.pop();
                     ++seen;
                     for (Element v : succ[u])
                       if (--indeg[v] == 0) ready.push(v);
                   }
                   require(seen == inst.n, "precedences contain a cycle");
                 },
                 [](const TspInstance& inst) {
                   require(inst.n >= 1, "n must be >= 1");
                   require(inst.dist.size() == inst.n * inst.n, "distance matrix must be n x n");
                   for (Element a = 0; a < inst.n; ++a) {
                     require(inst.d(a, a) == 0, "distance diagonal must be zero");
                     for (Element b = 0; b < inst.n; ++b) {
                       require(inst.d(a, b) >= 0, "distances must be non-negative");
                       require(inst.d(a, b) == inst.d(b, a), "distance matrix must be symmetric");
                     }
                   }
                 },
                 [](const AuctionInstance& inst) {
                   require(inst.n >= 1, "n must be >= 1");
                   require(inst.c >= 1 && inst.c <= kMaxLocality, "auction window c must be in [1, 4]");
                   require(inst.v.size() == inst.n && inst.q.size() == inst.n, "v and q must have n entries");
                   require(inst.lambda.size() == inst.n, "lambda must be padded to n slots");
                   require(inst.w.size() == inst.n * inst.n * inst.c, "influence table must be n x n x c");
                   for (double q : inst.q) require(q > 0.0 && q <= 1.0, "click probabilities must lie in (0, 1]");
                   require(inst.lambda[0] <= 1.0, "lambda_1 must be <= 1");
                   bool padding = false;
                   for (std::size_t s = 0; s < inst.n; ++s) {
                     const double l = inst.lambda[s];
                     require(l >= 0.0, "slot ctrs must be non-negative");
                     if (l == 0.0) padding = true;
                     else require(!padding && (s == 0 || l < inst.lambda[s - 1]),
                                  "slot ctrs must strictly decrease, then be zero");
                   }
                   for (double w : inst.w) require(w >= 0.0 && w <= 1.0, "influence values must lie in [0, 1]");
                 },
             },
             instance);
}

IntValue value(const MasInstance& inst, const Permutation& sigma) {
  check_size(inst.n, sigma);
  const auto pos = positions(sigma);
  std::int64_t total = 0;
  for (std::size_t a = 0; a < inst.arcs.size(); ++a)
    if (pos[inst.arcs[a].first] < pos[inst.arcs[a].second]) total += inst.weights.empty() ? 1 : inst.weights[a];
  return total;
}

IntValue value(const MlaInstance& inst, const Permutation& sigma) {
  check_size(inst.n, sigma);
  const auto pos = positions(sigma);
  std::int64_t total = 0;
  for (auto [u, v] : inst.edges) total += std::abs(static_cast<std::int64_t>(pos[u]) - static_cast<std::int64_t>(pos[v]));
  return total;
}

IntValue value(const ScheduleInstance& inst, const Permutation& sigma) {
  check_size(inst.n, sigma);
  const auto pos = positions(sigma);
  for (auto [u, v] : inst.prec)
    if (pos[u] > pos[v]) return IntValue::pos_inf();
  std::int64_t clock = 0, total = 0;
  for (Element e : sigma.elements()) {
    clock += inst.proc[e];
    total += clock;
  }
  return total;
}

IntValue value(const TspInstance& inst, const Permutation& sigma) {
  check_size(inst.n, sigma);
  std::int64_t total = 0;
  for (std::size_t p = 0; p + 1 < sigma.size(); ++p) total += inst.d(sigma[p], sigma[p + 1]);
  return total;
}

RealValue value(const AuctionInstance& inst, const Permutation& sigma) {
  check_size(inst.n, sigma);
  const auto all = sigma.elements();
  double total = 0.0;
  for (std::size_t p = 0; p < all.size(); ++p) {
    const std::size_t from = p >= inst.c ? p - inst.c : 0;
    total += auction_term(inst, p, all.subspan(from, p - from + 1));
  }
  return total;
}

RealValue objective(const Instance& instance, const Permutation& sigma) {
  return std::visit(
      Overloaded{[&](const AuctionInstance& inst) { return value(inst, sigma); },
                 [&](const auto& inst) { return to_real(value(inst, sigma)); }},
      instance);
}

std::unique_ptr<DecomposableProblem> as_decomposable(const Instance& instance) {
  return std::visit(
      Overloaded{[](const MasInstance& inst) -> std::unique_ptr<DecomposableProblem> {
                   return std::make_unique<MasProblem>(inst);
                 },
                 [](const MlaInstance& inst) -> std::unique_ptr<DecomposableProblem> {
                   return std::make_unique<MlaProblem>(inst);
                 },
                 [](const ScheduleInstance& inst) -> std::unique_ptr<DecomposableProblem> {
                   return std::make_unique<ScheduleProblem>(inst);
                 },
                 [](const auto&) -> std::unique_ptr<DecomposableProblem> {
                   throw std::invalid_argument("instance kind has no decomposition adapter");
                 }},
      instance);
}

std::unique_ptr<CLocalProblem<std::int64_t>> as_clocal(const TspInstance& inst) {
  return std::make_unique<TspProblem>(inst);
}

std::unique_ptr<CLocalProblem<double>> as_clocal(const AuctionInstance& inst) {
  return std::make_unique<AuctionProblem>(inst);
}

Instance relabel(const Instance& instance, const Permutation& order) {
  require(order.size() == size_of(instance), "relabel: permutation size mismatch");
  const Permutation inv = order.inverse();
  auto map_pairs = [&](const std::vector<Arc>& pairs) {
    std::vector<Arc> out;
    out.reserve(pairs.size());
    for (auto [u, v] : pairs) out.emplace_back(inv[u], inv[v]);
    return out;
  };
  return std::visit(
      Overloaded{
          [&](const MasInstance& inst) -> Instance { return MasInstance{inst.n, map_pairs(inst.arcs), inst.weights}; },
          [&](const MlaInstance& inst) -> Instance { return MlaInstance{inst.n, map_pairs(inst.edges)}; },
          [&](const ScheduleInstance& inst) -> Instance {
            ScheduleInstance out{inst.n, std::vector<std::int64_t>(inst.n), map_pairs(inst.prec)};
            for (std::size_t x = 0; x < inst.n; ++x) out.proc[x] = inst.proc[order[x]];
            return out;
          },
          [&](const TspInstance& inst) -> Instance {
            TspInstance out{inst.n, std::vector<std::int64_t>(inst.n * inst.n)};
            for (std::size_t x = 0; x < inst.n; ++x)
              for (std::size_t y = 0; y < inst.n; ++y) out.dist[x * inst.n + y] = inst.d(order[x], order[y]);
            return out;
          },
          [&](const AuctionInstance& inst) -> Instance {
            AuctionInstance out = inst;
            for (std::size_t x = 0; x < inst.n; ++x) {
              out.v[x] = inst.v[order[x]];
              out.q[x] = inst.q[order[x]];
              for (std::size_t y = 0; y < inst.n; ++y)
                for (std::size_t d = 1; d <= inst.c; ++d)
                  out.set_influence(static_cast<Element>(x), static_cast<Element>(y), d,
                                    inst.influence(order[x], order[y], d));
            }
            return out;
          }},
      instance);
}

bool same_value(const Instance& instance, const RealValue& a, const RealValue& b) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  if (std::holds_alternative<AuctionInstance>(instance)) return std::abs(a.value() - b.value()) <= 1e-9;
  return a.value() == b.value();
}

namespace {

template <class F>
void for_each_order(std::size_t n, F&& f) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  do {
    f(order);
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

BruteForceResult brute_force(const Instance& instance) {
  const std::size_t n = size_of(instance);
  if (n > kBruteForceMaxN)
    throw std::invalid_argument("brute force refuses n = " + std::to_string(n) + " (limit " +
                                std::to_string(kBruteForceMaxN) + ")");
  const Sense sense = sense_of(instance);
  const double tol = std::holds_alternative<AuctionInstance>(instance) ? 1e-12 : 0.0;
  std::optional<BruteForceResult> best;
  for_each_order(n, [&](const std::vector<Element>& order) {
    Permutation sigma(order);
    const RealValue v = objective(instance, sigma);
    if (!best || better(v, best->value, sense, tol)) best = BruteForceResult{v, std::move(sigma)};
  });
  return *best;
}

std::size_t count_optima(const Instance& instance) {
  const BruteForceResult best = brute_force(instance);
  std::size_t count = 0;
  for_each_order(size_of(instance), [&](const std::vector<Element>& order) {
    if (same_value(instance, objective(instance, Permutation(order)), best.value)) ++count;
  });
  return count;
}

// -- JSON ----------------------------------------------------------------------

namespace {

nlohmann::json pairs_to_json(const std::vector<Arc>& pairs) {
  nlohmann::json out = nlohmann::json::array();
  for (auto [u, v] : pairs) out.push_back({u + 1, v + 1});
  return out;
}

std::vector<Arc> pairs_from_json(const nlohmann::json& j, std::size_t n) {
  std::vector<Arc> out;
  for (const auto& p : j) {
    const auto u = p.at(0).get<long long>(), v = p.at(1).get<long long>();
    require(u >= 1 && v >= 1 && static_cast<std::size_t>(u) <= n && static_cast<std::size_t>(v) <= n,
            "pair endpoint out of range 1..n");
    out.emplace_back(static_cast<Element>(u - 1), static_cast<Element>(v - 1));
  }
  return out;
}

}  // namespace

nlohmann::json to_json(const Instance& instance) {
  nlohmann::json j;
  j["kind"] = kind_name(instance);
  j["n"] = size_of(instance);
  std::visit(Overloaded{[&](const MasInstance& inst) {
                          j["arcs"] = pairs_to_json(inst.arcs);
                          if (!inst.weights.empty()) j["weights"] = inst.weights;
                        },
                        [&](const MlaInstance& inst) { j["edges"] = pairs_to_json(inst.edges); },
                        [&](const ScheduleInstance& inst) {
                          j["proc"] = inst.proc;
                          j["prec"] = pairs_to_json(inst.prec);
                        },
                        [&](const TspInstance& inst) {
                          nlohmann::json rows = nlohmann::json::array();
                          for (std::size_t a = 0; a < inst.n; ++a)
                            rows.push_back(std::vector<std::int64_t>(inst.dist.begin() + static_cast<long>(a * inst.n),
                                                                     inst.dist.begin() + static_cast<long>((a + 1) * inst.n)));
                          j["dist"] = rows;
                        },
                        [&](const AuctionInstance& inst) {
                          j["v"] = inst.v;
                          j["q"] = inst.q;
                          j["lambda"] = inst.lambda;
                          j["c"] = inst.c;
                          nlohmann::json w = nlohmann::json::array();
                          for (Element a = 0; a < inst.n; ++a)
                            for (Element b = 0; b < inst.n; ++b)
                              for (std::size_t d = 1; d <= inst.c; ++d)
                                if (const double x = inst.influence(a, b, d); x != 0.0) w.push_back({a + 1, b + 1, d, x});
                          j["w"] = w;
                        }},
             instance);
  return j;
}

Instance instance_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const auto n = j.at("n").get<std::size_t>();
  Instance out;
  if (kind == "mas") {
    MasInstance inst{n, pairs_from_json(j.at("arcs"), n), {}};
    if (j.contains("weights")) inst.weights = j.at("weights").get<std::vector<std::int64_t>>();
    out = inst;
  } else if (kind == "mla") {
    out = MlaInstance{n, pairs_from_json(j.at("edges"), n)};
  } else if (kind == "schedule") {
    out = ScheduleInstance{n, j.at("proc").get<std::vector<std::int64_t>>(),
                           j.contains("prec") ? pairs_from_json(j.at("prec"), n) : std::vector<Arc>{}};
  } else if (kind == "tsp") {
    TspInstance inst{n, {}};
    const auto& rows = j.at("dist");
    require(rows.size() == n, "dist must have n rows");
    for (const auto& row : rows) {
      require(row.size() == n, "dist rows must have n entries");
      for (const auto& x : row) inst.dist.push_back(x.get<std::int64_t>());
    }
    out = inst;
  } else if (kind == "auction") {
    AuctionInstance inst;
    inst.n = n;
    inst.v = j.at("v").get<std::vector<double>>();
    inst.q = j.at("q").get<std::vector<double>>();
    inst.lambda = j.at("lambda").get<std::vector<double>>();
    require(inst.lambda.size() <= n, "more slot ctrs than ads");
    inst.lambda.resize(n, 0.0);  // fewer slots than ads: zero-pad
    inst.c = j.at("c").get<std::size_t>();
    require(inst.c >= 1 && inst.c <= kMaxLocality, "auction window c must be in [1, 4]");
    inst.w.assign(n * n * inst.c, 0.0);
    if (j.contains("w")) {
      for (const auto& entry : j.at("w")) {
        const auto a = entry.at(0).get<long long>(), b = entry.at(1).get<long long>();
        const auto d = entry.at(2).get<long long>();
        require(a >= 1 && b >= 1 && static_cast<std::size_t>(a) <= n && static_cast<std::size_t>(b) <= n,
                "influence ad index out of range");
        // Influence outside the window is zero by definition; drop it.
        if (d < 1 || static_cast<std::size_t>(d) > inst.c) continue;
        inst.set_influence(static_cast<Element>(a - 1), static_cast<Element>(b - 1), static_cast<std::size_t>(d),
                           entry.at(3).get<double>());
      }
    }
    out = inst;
  } else {
    throw std::invalid_argument("unknown instance kind '" + kind + "'");
  }
  validate(out);
  return out;
}

// -- Generators ------------------------------------------------------------------

std::string to_string(PlantedKind kind) {
  switch (kind) {
    case PlantedKind::mas_tournament: return "mas_tournament";
    case PlantedKind::mla_path: return "mla_path";
    case PlantedKind::sched_spt: return "sched_spt";
    case PlantedKind::sched_chain: return "sched_chain";
    case PlantedKind::tsp_cycle_gap: return "tsp_cycle_gap";
  }
  return "?";
}

PlantedKind planted_kind_from_string(const std::string& name) {
  for (PlantedKind k : all_planted_kinds())
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown planted kind '" + name + "'");
}

const std::vector<PlantedKind>& all_planted_kinds() {
  static const std::vector<PlantedKind> kinds{PlantedKind::mas_tournament, PlantedKind::mla_path,
                                              PlantedKind::sched_spt, PlantedKind::sched_chain,
                                              PlantedKind::tsp_cycle_gap};
  return kinds;
}

Permutation random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(order[i - 1], order[pick(rng)]);
  }
  return Permutation(std::move(order));
}

PlantedInstance generate_planted(PlantedKind kind, std::size_t n, std::uint64_t seed) {
  require(n >= 1, "n must be >= 1");
  std::mt19937_64 rng(seed);
  Permutation star = random_permutation(n, rng);
  auto consecutive = [&] {
    std::vector<Arc> pairs;
    for (std::size_t p = 0; p + 1 < n; ++p) pairs.emplace_back(star[p], star[p + 1]);
    return pairs;
  };
  Instance inst;
  RealValue optimum;
  switch (kind) {
    case PlantedKind::mas_tournament: {
      MasInstance mas{n, {}, {}};
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) mas.arcs.emplace_back(star[a], star[b]);
      optimum = static_cast<double>(n * (n - 1) / 2);
      inst = std::move(mas);
      break;
    }
    case PlantedKind::mla_path:
      inst = MlaInstance{n, consecutive()};
      optimum = static_cast<double>(n - 1);
      break;
    case PlantedKind::sched_spt: {
      ScheduleInstance s{n, std::vector<std::int64_t>(n), {}};
      std::uniform_int_distribution<std::int64_t> gap(1, 3);
      std::int64_t t = 0;
      for (std::size_t p = 0; p < n; ++p) s.proc[star[p]] = (t += gap(rng));
      optimum = to_real(value(s, star));
      inst = std::move(s);
      break;
    }
    case PlantedKind::sched_chain: {
      ScheduleInstance s{n, std::vector<std::int64_t>(n), consecutive()};
      std::uniform_int_distribution<std::int64_t> proc(1, 9);
      for (auto& p : s.proc) p = proc(rng);
      optimum = to_real(value(s, star));
      inst = std::move(s);
      break;
    }
    case PlantedKind::tsp_cycle_gap: {
      TspInstance t{n, std::vector<std::int64_t>(n * n, 2)};
      for (std::size_t a = 0; a < n; ++a) t.dist[a * n + a] = 0;
      for (auto [u, v] : consecutive()) t.dist[u * n + v] = t.dist[v * n + u] = 1;
      optimum = static_cast<double>(n - 1);
      inst = std::move(t);
      break;
    }
  }
  return {kind, std::move(inst), std::move(star), optimum};
}

MasInstance random_mas(std::size_t n, double density, std::mt19937_64& rng, bool weighted) {
  MasInstance inst{n, {}, {}};
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<std::int64_t> weight(1, 5);
  for (Element u = 0; u < n; ++u)
    for (Element v = 0; v < n; ++v)
      if (u != v && keep(rng)) {
        inst.arcs.emplace_back(u, v);
        if (weighted) inst.weights.push_back(weight(rng));
      }
  return inst;
}

MlaInstance random_mla(std::size_t n, double density, std::mt19937_64& rng) {
  MlaInstance inst{n, {}};
  std::bernoulli_distribution keep(density);
  for (Element u = 0; u < n; ++u)
    for (Element v = u + 1; v < n; ++v)
      if (keep(rng)) inst.edges.emplace_back(u, v);
  return inst;
}

ScheduleInstance random_schedule(std::size_t n, double prec_density, std::mt19937_64& rng) {
  ScheduleInstance inst{n, std::vector<std::int64_t>(n), {}};
  std::uniform_int_distribution<std::int64_t> proc(1, 10);
  for (auto& p : inst.proc) p = proc(rng);
  const Permutation topo = random_permutation(n, rng);
  std::bernoulli_distribution keep(prec_density);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (keep(rng)) inst.prec.emplace_back(topo[a], topo[b]);
  return inst;
}

TspInstance random_tsp(std::size_t n, std::int64_t max_distance, std::mt19937_64& rng) {
  TspInstance inst{n, std::vector<std::int64_t>(n * n, 0)};
  std::uniform_int_distribution<std::int64_t> dist(1, max_distance);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) inst.dist[a * n + b] = inst.dist[b * n + a] = dist(rng);
  return inst;
}

AuctionInstance random_auction(std::size_t n, std::size_t c, std::mt19937_64& rng) {
  AuctionInstance inst;
  inst.n = n;
  inst.c = c;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    inst.v.push_back(1.0 + 9.0 * unit(rng));
    inst.q.push_back(0.05 + 0.95 * unit(rng));
  }
  std::uniform_int_distribution<std::size_t> slots(1, n);
  const std::size_t real_slots = slots(rng);
  std::vector<double> ctr;
  for (std::size_t s = 0; s < real_slots; ++s) ctr.push_back(0.05 + 0.95 * unit(rng));
  std::sort(ctr.begin(), ctr.end(), std::greater<>());
  for (std::size_t s = 1; s < ctr.size(); ++s)
    if (ctr[s] >= ctr[s - 1]) ctr[s] = ctr[s - 1] * 0.999;
  ctr.resize(n, 0.0);
  inst.lambda = ctr;
  inst.w.assign(n * n * c, 0.0);
  std::bernoulli_distribution present(0.7);
  for (Element j = 0; j < n; ++j)
    for (Element i = 0; i < n; ++i)
      if (i != j)
        for (std::size_t d = 1; d <= c; ++d)
          if (present(rng)) inst.set_influence(j, i, d, unit(rng));
  return inst;
}

}  // namespace predperm
