#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace predperm {

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// Property suites over random and planted instances: oracle behavior,
// permutation algebra, decomposition identities, DP exactness against brute
// force, window soundness, planted soundness and perfect-prediction solves.
// `quick` shrinks sample counts.
std::vector<InvariantResult> run_invariants(bool quick, std::uint64_t seed);

}  // namespace predperm
