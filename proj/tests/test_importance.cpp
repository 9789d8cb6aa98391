#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/error.hpp"
#include "hyperdart/importance.hpp"
#include "support.hpp"
#include "synthetic.hpp"

using namespace hyperdart;

namespace {

// Average marginal contribution over every ordering of the players.
std::vector<double> all_orderings(const CoalitionGame& game) {
  std::vector<std::size_t> order(game.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> phi(game.size(), 0.0);
  std::size_t count = 0;
  do {
    Coalition seen;
    double before = game.value(seen);
    for (std::size_t p : order) {
      seen.insert(p);
      double after = game.value(seen);
      phi[p] += after - before;
      before = after;
    }
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : phi) x /= static_cast<double>(count);
  return phi;
}

Dart rex() { return build_dart(test::kRex, test::minimal_lexicon()); }

}  // namespace

TEST_CASE("coalition bitset") {
  Coalition c{1, 70};
  CHECK(c.contains(70));
  CHECK_FALSE(c.contains(2));
  CHECK(c.size() == 2);
  c.erase(70);
  CHECK(c == Coalition{1});
  CHECK(c.hash() == Coalition{1}.hash());
  CHECK(Coalition::all(3).members() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("Rex importance matches the independent oracle") {
  // tools/oracles.py rex_shapley()
  LexicalScorer scorer;
  ImportanceVector iv = shapley_exact(rex(), scorer);
  REQUIRE(iv.values.size() == 3);
  CHECK(std::abs(iv.values[0] - 0.21388491004433038) <= 1e-12);
  CHECK(std::abs(iv.values[1] - 0.1855342349545248) <= 1e-12);
  CHECK(std::abs(iv.values[2] - 0.2369444913647812) <= 1e-12);
  CHECK(std::abs(iv.payoff_full - iv.payoff_empty - 0.6363636363636364) <= 1e-12);
  CHECK(iv.payoff_full == 1.0);
}

TEST_CASE("exact values equal the all-orderings oracle for n <= 4") {
  LexicalScorer scorer;
  auto lex = test::synthetic_lexicon();
  std::mt19937_64 rng(11);
  for (std::size_t n = 0; n <= 4; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      Dart d = build_dart(test::synthetic_sentence(rng, n, false), lex);
      REQUIRE(d.size() == n);
      CoalitionGame game(d, scorer);
      auto exact = shapley_exact(game).values;
      auto oracle = all_orderings(game);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(exact[i] - oracle[i]) <= 1e-9);
    }
  }
}

TEST_CASE("efficiency, dummy and symmetry") {
  LexicalScorer scorer;
  auto lex = test::synthetic_lexicon();
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    Dart d = test::with_dummy(build_dart(test::synthetic_sentence(rng, 3, true), lex));
    REQUIRE(d.size() == 6);
    ImportanceVector iv = shapley_exact(d, scorer);
    double sum = std::accumulate(iv.values.begin(), iv.values.end(), 0.0);
    CHECK(std::abs(sum - (iv.payoff_full - iv.payoff_empty)) <= 1e-9);
    CHECK(iv.values[5] == 0.0);
    CHECK(std::abs(iv.values[3] - iv.values[4]) <= 1e-9);
  }
}

TEST_CASE("players subset keeps other details in their state") {
  LexicalScorer scorer;
  Dart d = with_state(rex(), 1, DetailState::Dropped);
  CoalitionGame game(d, scorer, {0, 2});
  CHECK(game.size() == 2);
  ImportanceVector iv = shapley_exact(game);
  CHECK(std::abs(iv.values[0] + iv.values[1] - (iv.payoff_full - iv.payoff_empty)) <= 1e-12);
  CHECK(game.evaluations() == 4);
}

TEST_CASE("exact limit") {
  LexicalScorer scorer;
  CHECK_THROWS_AS(shapley_exact(rex(), scorer, 2), TooManyDetails);
  try {
    shapley_exact(rex(), scorer, 2);
  } catch (const TooManyDetails& e) {
    CHECK(e.count() == 3);
    CHECK(e.limit() == 2);
  }
}

TEST_CASE("sampling converges and is reproducible") {
  LexicalScorer scorer;
  std::mt19937_64 rng(3);
  Dart d = build_dart(test::synthetic_sentence(rng, 8, false), test::synthetic_lexicon());
  REQUIRE(d.size() == 8);
  CoalitionGame game(d, scorer);
  auto exact = shapley_exact(game).values;
  ImportanceVector a = shapley_sampled(game, 4000, 99);
  ImportanceVector b = shapley_sampled(game, 4000, 99);
  CHECK(a.values == b.values);
  REQUIRE(a.std_errors.has_value());
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(a.values[i] - exact[i]) <= 0.02);
    CHECK((*a.std_errors)[i] >= 0.0);
  }
  double sum = std::accumulate(a.values.begin(), a.values.end(), 0.0);
  // Each antithetic pair telescopes to v(N) - v(empty).
  CHECK(std::abs(sum - (a.payoff_full - a.payoff_empty)) <= 1e-9);
  CHECK_THROWS_AS(shapley_sampled(game, 0, 1), std::invalid_argument);
}
