#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "predperm/oracle.hpp"
#include "predperm/problems.hpp"

using namespace predperm;
using testing::P;

TEST_CASE("answers are antisymmetric, cached and counted once") {
  PredictionOracle oracle(P({3, 1, 2, 5, 4}), 0.2, 42);
  for (Element a = 0; a < 5; ++a)
    for (Element b = 0; b < 5; ++b) {
      if (a == b) continue;
      const int x = oracle.query(a, b);
      CHECK((x == 1 || x == -1));
      CHECK(oracle.query(b, a) == -x);
      CHECK(oracle.cached(a, b) == x);
    }
  CHECK(oracle.queries_used() == 10);
  CHECK_THROWS_AS(oracle.query(2, 2), std::invalid_argument);
  CHECK_THROWS(oracle.query(0, 5));
}

TEST_CASE("answers do not depend on the order of asking") {
  const Permutation hidden = Permutation::reversed(30);
  PredictionOracle forward(hidden, 0.1, 9), backward(hidden, 0.1, 9);
  std::vector<int> a, b;
  for (Element x = 0; x < 30; ++x)
    for (Element y = x + 1; y < 30; ++y) a.push_back(forward.query(x, y));
  for (Element x = 30; x-- > 0;)
    for (Element y = 30; y-- > x + 1;) b.push_back(backward.query(y, x));
  std::reverse(b.begin(), b.end());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == -b[i]);
}

TEST_CASE("perfect predictions follow the hidden order") {
  std::mt19937_64 rng(1);
  const Permutation hidden = random_permutation(25, rng);
  PredictionOracle oracle(hidden, 0.5, 5);
  for (std::size_t i = 0; i < 25; ++i)
    for (std::size_t j = i + 1; j < 25; ++j) CHECK(oracle.query(hidden[i], hidden[j]) == 1);
}

TEST_CASE("correctness rate is calibrated") {
  const std::size_t n = 200;
  std::vector<std::pair<Element, Element>> pairs;
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::mt19937_64 rng(2);
  for (double eps : {0.1, 0.25, 0.4}) {
    PredictionOracle oracle(random_permutation(n, rng), eps, rng());
    const double rate = correctness_rate(oracle, pairs);
    const double p = 0.5 + eps;
    CHECK(std::abs(rate - p) <= 3 * std::sqrt(p * (1 - p) / static_cast<double>(pairs.size())));
  }
}

TEST_CASE("budget is checked before a new pair is realized") {
  PredictionOracle oracle(Permutation::identity(6), 0.3, 1, QueryBudget::of(2));
  oracle.query(0, 1);
  oracle.query(2, 3);
  CHECK(oracle.remaining() == 0);
  CHECK_NOTHROW(oracle.query(1, 0));  // cached pairs are free
  CHECK_THROWS_AS(oracle.query(4, 5), BudgetExhausted);
  CHECK_FALSE(oracle.cached(4, 5).has_value());
  CHECK(oracle.queries_used() == 2);
  oracle.set_budget(QueryBudget::unlimited());
  CHECK_NOTHROW(oracle.query(4, 5));
}

TEST_CASE("epsilon must lie in (0, 1/2]") {
  CHECK_THROWS_AS(PredictionOracle(Permutation::identity(3), 0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(PredictionOracle(Permutation::identity(3), 0.6, 1), std::invalid_argument);
  CHECK_NOTHROW(PredictionOracle(Permutation::identity(3), 0.5, 1));
}

TEST_CASE("oracle json round trip reproduces answers") {
  PredictionOracle a(P({2, 4, 1, 3}), 0.15, 77, QueryBudget::of(5));
  PredictionOracle b = PredictionOracle::from_json(a.to_json());
  CHECK(b.hidden() == a.hidden());
  CHECK(b.budget().max_pairs == a.budget().max_pairs);
  for (Element x = 0; x < 4; ++x)
    for (Element y = x + 1; y < 4; ++y)
      if (a.remaining() != 0) CHECK(a.query(x, y) == b.query(x, y));
}
