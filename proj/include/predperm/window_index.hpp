#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace predperm {

// Dense ranking of the k-element subsets of {0, ..., width-1}, encoded as
// bitmasks, via the combinatorial number system.
class KSubsetIndex {
 public:
  KSubsetIndex(std::size_t width, std::size_t k) : width_(width), k_(k) {
    if (width > 62) throw std::invalid_argument("KSubsetIndex: width too large");
    binom_.assign((width + 1) * (k + 2), 0);
    for (std::size_t n = 0; n <= width; ++n) {
      for (std::size_t r = 0; r <= k + 1; ++r) {
        std::uint64_t v;
        if (r == 0) v = 1;
        else if (n == 0) v = 0;
        else v = at(n - 1, r - 1) + at(n - 1, r);
        binom_[n * (k + 2) + r] = v;
      }
    }
  }

  std::size_t count() const { return static_cast<std::size_t>(at(width_, k_)); }

  std::size_t rank(std::uint64_t mask) const {
    std::uint64_t r = 0;
    std::size_t m = 1;
    for (std::uint64_t w = mask; w; w &= w - 1, ++m) r += at(static_cast<std::size_t>(std::countr_zero(w)), m);
    return static_cast<std::size_t>(r);
  }

 private:
  std::uint64_t at(std::size_t n, std::size_t r) const { return binom_[n * (k_ + 2) + r]; }

  std::size_t width_, k_;
  std::vector<std::uint64_t> binom_;
};

}  // namespace predperm
