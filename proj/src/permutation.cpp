#include "predperm/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace predperm {

bool is_permutation(std::span<const Element> order) {
  std::vector<bool> seen(order.size(), false);
  for (Element e : order) {
    if (e >= order.size() || seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

Permutation::Permutation(std::vector<Element> order) : order_(std::move(order)) {
  if (order_.empty()) throw std::invalid_argument("permutation must have n >= 1");
  if (!is_permutation(order_)) throw std::invalid_argument("not a permutation: " + str());
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Element> order(n);
  std::iota(order.begin(), order.end(), Element{0});
  return Permutation(std::move(order));
}

Permutation Permutation::reversed(std::size_t n) {
  std::vector<Element> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Element>(n - 1 - i);
  return Permutation(std::move(order));
}

Permutation Permutation::from_one_based(std::span<const long long> values) {
  std::vector<Element> order;
  order.reserve(values.size());
  for (long long v : values) {
    if (v < 1 || static_cast<std::size_t>(v) > values.size())
      throw std::invalid_argument("1-based permutation entry out of range: " + std::to_string(v));
    order.push_back(static_cast<Element>(v - 1));
  }
  return Permutation(std::move(order));
}

Permutation Permutation::inverse() const {
  std::vector<Element> inv(order_.size());
  for (std::size_t p = 0; p < order_.size(); ++p) inv[order_[p]] = static_cast<Element>(p);
  return Permutation(std::move(inv));
}

std::vector<long long> Permutation::to_one_based() const {
  std::vector<long long> out;
  out.reserve(order_.size());
  for (Element e : order_) out.push_back(static_cast<long long>(e) + 1);
  return out;
}

std::string Permutation::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(order_[i] + 1);
  }
  return s + ")";
}

Permutation compose_relabel(const Permutation& sigma, const Permutation& pi) {
  if (sigma.size() != pi.size()) throw std::invalid_argument("compose_relabel: length mismatch");
  const Permutation pi_inv = pi.inverse();
  std::vector<Element> out(sigma.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = sigma[pi_inv[j]];
  return Permutation(std::move(out));
}

std::size_t max_dislocation(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("max_dislocation: length mismatch");
  std::size_t worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    worst = std::max(worst, d);
  }
  return worst;
}

bool within_window(const Permutation& p, std::size_t k) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t d = p[i] > i ? p[i] - i : i - p[i];
    if (d > k) return false;
  }
  return true;
}

}  // namespace predperm
