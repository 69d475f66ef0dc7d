#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace predperm {

using Element = std::uint32_t;

// Fixed-universe bitset over elements {0, ..., n-1}.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}
  ElementSet(std::size_t universe, std::initializer_list<Element> members) : ElementSet(universe) {
    for (Element e : members) insert(e);
  }

  std::size_t universe() const { return universe_; }

  bool contains(Element e) const { return (words_[e >> 6] >> (e & 63)) & 1U; }
  void insert(Element e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(Element e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  // Inserts the half-open range [first, last).
  void insert_range(Element first, Element last) {
    for (Element e = first; e < last;) {
      if ((e & 63) == 0 && e + 64 <= last) {
        words_[e >> 6] = ~std::uint64_t{0};
        e += 64;
      } else {
        insert(e++);
      }
    }
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t intersection_size(const ElementSet& other) const {
    std::size_t total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    return total;
  }

  bool intersects(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }

  ElementSet& operator|=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  ElementSet& operator&=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  // Set difference.
  ElementSet& operator-=(const ElementSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  // Complement within the universe.
  ElementSet complement() const {
    ElementSet out(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (universe_ & 63) out.words_.back() &= (std::uint64_t{1} << (universe_ & 63)) - 1;
    return out;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      for (std::uint64_t w = words_[i]; w; w &= w - 1) {
        f(static_cast<Element>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
      }
    }
  }

  std::vector<Element> members() const {
    std::vector<Element> out;
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace predperm
