#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "predperm/element_set.hpp"

namespace predperm {

// An ordering of the elements {0, ..., n-1}: element_at(p) is the element
// placed at position p. Storage is 0-based; to_one_based/from_one_based
// convert for every external format.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Element> order);

  static Permutation identity(std::size_t n);
  static Permutation reversed(std::size_t n);
  static Permutation from_one_based(std::span<const long long> values);

  std::size_t size() const { return order_.size(); }
  Element operator[](std::size_t pos) const { return order_[pos]; }
  Element element_at(std::size_t pos) const { return order_[pos]; }
  std::span<const Element> elements() const { return order_; }

  Permutation inverse() const;
  std::vector<long long> to_one_based() const;
  std::string str() const;  // 1-based "(2,1,3)"

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Element> order_;
};

// sigma ∘ pi^{-1}: result[j] = sigma[pi^{-1}(j)].
Permutation compose_relabel(const Permutation& sigma, const Permutation& pi);

// max_i |a[i] - b[i]|.
std::size_t max_dislocation(const Permutation& a, const Permutation& b);

// True iff every element sits at most k positions from its own index.
bool within_window(const Permutation& p, std::size_t k);

bool is_permutation(std::span<const Element> order);

}  // namespace predperm
