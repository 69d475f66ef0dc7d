#include "predperm/oracle.hpp"

#include <string>

#include "predperm/rng.hpp"

namespace predperm {

PredictionOracle::PredictionOracle(Permutation hidden, double epsilon, std::uint64_t seed, QueryBudget budget)
    : hidden_(std::move(hidden)), epsilon_(epsilon), seed_(seed), budget_(budget) {
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw std::invalid_argument("epsilon must lie in (0, 1/2], got " + std::to_string(epsilon));
  const Permutation inv = hidden_.inverse();
  position_.assign(inv.elements().begin(), inv.elements().end());
  const std::size_t n = hidden_.size();
  answers_.assign(n * (n - 1) / 2, 0);
}

std::size_t PredictionOracle::pair_index(Element lo, Element hi) const {
  // Row-major upper triangle without the diagonal.
  const std::size_t n = hidden_.size();
  return static_cast<std::size_t>(lo) * (2 * n - lo - 1) / 2 + (hi - lo - 1);
}

bool PredictionOracle::realized_correct(Element lo, Element hi) const {
  const std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | hi;
  return unit_interval(derive_seed({seed_, key})) < 0.5 + epsilon_;
}

std::optional<int> PredictionOracle::cached(Element l, Element t) const {
  if (l == t || l >= n() || t >= n()) return std::nullopt;
  const Element lo = std::min(l, t), hi = std::max(l, t);
  const std::int8_t a = answers_[pair_index(lo, hi)];
  if (a == 0) return std::nullopt;
  return l == lo ? a : -a;
}

int PredictionOracle::query(Element l, Element t) {
  if (l == t) throw std::invalid_argument("query of an element against itself");
  if (l >= n() || t >= n()) throw std::out_of_range("query element out of range");
  const Element lo = std::min(l, t), hi = std::max(l, t);
  std::int8_t& slot = answers_[pair_index(lo, hi)];
  if (slot == 0) {
    if (budget_.max_pairs && queries_used_ >= *budget_.max_pairs)
      throw BudgetExhausted("query budget of " + std::to_string(*budget_.max_pairs) + " pairs exhausted");
    const bool truth = truly_before(lo, hi);
    const bool correct = realized_correct(lo, hi);
    slot = (truth == correct) ? 1 : -1;
    ++queries_used_;
  }
  return l == lo ? slot : -slot;
}

std::optional<std::size_t> PredictionOracle::remaining() const {
  if (!budget_.max_pairs) return std::nullopt;
  return *budget_.max_pairs > queries_used_ ? *budget_.max_pairs - queries_used_ : 0;
}

nlohmann::json PredictionOracle::to_json() const {
  nlohmann::json j;
  j["n"] = n();
  j["sigma_star"] = hidden_.to_one_based();
  j["epsilon"] = epsilon_;
  j["seed"] = seed_;
  j["max_pairs"] = budget_.max_pairs ? nlohmann::json(*budget_.max_pairs) : nlohmann::json(nullptr);
  return j;
}

PredictionOracle PredictionOracle::from_json(const nlohmann::json& j) {
  const auto sigma = j.at("sigma_star").get<std::vector<long long>>();
  if (j.contains("n") && j.at("n").get<std::size_t>() != sigma.size())
    throw std::invalid_argument("oracle config: n does not match sigma_star length");
  QueryBudget budget;
  if (j.contains("max_pairs") && !j.at("max_pairs").is_null()) budget.max_pairs = j.at("max_pairs").get<std::size_t>();
  return PredictionOracle(Permutation::from_one_based(sigma), j.at("epsilon").get<double>(),
                          j.at("seed").get<std::uint64_t>(), budget);
}

double correctness_rate(PredictionOracle& oracle, const std::vector<std::pair<Element, Element>>& pairs) {
  if (pairs.empty()) return 1.0;
  std::size_t agree = 0;
  for (auto [l, t] : pairs) {
    const bool predicted_before = oracle.query(l, t) > 0;
    if (predicted_before == oracle.truly_before(l, t)) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(pairs.size());
}

}  // namespace predperm
