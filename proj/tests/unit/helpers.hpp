#pragma once

#include <initializer_list>
#include <vector>

#include "predperm/permutation.hpp"

namespace predperm::testing {

inline Permutation P(std::initializer_list<long long> one_based) {
  const std::vector<long long> v(one_based);
  return Permutation::from_one_based(v);
}

}  // namespace predperm::testing
