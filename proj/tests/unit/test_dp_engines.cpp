#include <doctest.h>

#include <random>

#include "predperm/problems.hpp"
#include "window_oracle.hpp"

using namespace predperm;

namespace {

Instance random_decomposable(int which, std::size_t n, std::mt19937_64& rng) {
  switch (which % 4) {
    case 0: return random_mas(n, 0.4, rng);
    case 1: return random_mas(n, 0.5, rng, true);
    case 2: return random_mla(n, 0.4, rng);
    default: return random_schedule(n, 0.25, rng);
  }
}

}  // namespace

TEST_CASE("window dp matches enumeration on random decomposable instances") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
    const Instance inst = random_decomposable(trial, n, rng);
    const auto problem = as_decomposable(inst);
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto expected = testing::best_within_window(inst, k);
      for (SplitPolicy split : {SplitPolicy::peel, SplitPolicy::midpoint}) {
        CAPTURE(trial);
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(static_cast<int>(split));
        if (!expected->is_finite()) {
          CHECK_THROWS_AS(solve_window(*problem, k, {split}), InfeasibleWindow);
          continue;
        }
        const auto sol = solve_window(*problem, k, {split});
        CHECK(within_window(sol.order, k));
        CHECK(to_real(sol.value) == *expected);
        CHECK(objective(inst, sol.order) == *expected);
      }
    }
  }
}

TEST_CASE("window dp with k = n - 1 finds the global optimum") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 4);
    const Instance inst = random_decomposable(trial, n, rng);
    const auto problem = as_decomposable(inst);
    const auto brute = brute_force(inst);
    const auto sol = solve_window(*problem, n - 1);
    CHECK(objective(inst, sol.order) == brute.value);
  }
}

TEST_CASE("decomposition identity holds at every split") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 5);
    const Instance inst = random_decomposable(trial, n, rng);
    const auto problem = as_decomposable(inst);
    const Permutation sigma = random_permutation(n, rng);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (std::size_t s = i; s < j; ++s) CHECK(check_decomposition(*problem, sigma, i, s, j));
    CHECK(to_real(evaluate(*problem, sigma)) == objective(inst, sigma));
  }
}

TEST_CASE("c-local dp matches enumeration for tsp and auctions") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 6);
    const std::size_t c = 1 + static_cast<std::size_t>(trial % 3);
    const TspInstance tsp = random_tsp(n, 9, rng);
    const AuctionInstance auction = random_auction(n, c, rng);
    for (std::size_t k = 1; k <= 3; ++k) {
      CAPTURE(trial);
      CAPTURE(k);
      const auto t = solve_window(*as_clocal(tsp), k);
      CHECK(within_window(t.order, k));
      CHECK(to_real(t.value) == *testing::best_within_window(tsp, k));
      const auto a = solve_window(*as_clocal(auction), k);
      CHECK(within_window(a.order, k));
      CHECK(a.value.value() == doctest::Approx(testing::best_within_window(auction, k)->value()).epsilon(1e-12));
      CHECK(value(auction, a.order).value() == doctest::Approx(a.value.value()).epsilon(1e-12));
    }
  }
}

TEST_CASE("peel and midpoint keys stay within the stated bound") {
  std::mt19937_64 rng(9);
  const Instance inst = random_mas(24, 0.3, rng);
  const auto problem = as_decomposable(inst);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto mid = solve_window(*problem, k, {SplitPolicy::midpoint});
    const auto peel = solve_window(*problem, k, {SplitPolicy::peel});
    CHECK(mid.stats.max_keys_per_node <= decomp_key_bound(k));
    CHECK(peel.stats.max_keys_per_node <= decomp_key_bound(k));
    CHECK(mid.value == peel.value);
  }
}
