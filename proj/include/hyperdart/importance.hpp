#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hyperdart/dart.hpp"
#include "hyperdart/scoring.hpp"

namespace hyperdart {

// A set of player positions, stored as a bitset.
class Coalition {
 public:
  Coalition() = default;
  Coalition(std::initializer_list<std::size_t> members);
  static Coalition all(std::size_t n);

  bool contains(std::size_t i) const;
  void insert(std::size_t i);
  void erase(std::size_t i);
  std::size_t size() const;
  std::vector<std::size_t> members() const;

  bool operator==(const Coalition& other) const;
  std::size_t hash() const;

 private:
  void trim();
  std::vector<std::uint64_t> words_;
};

struct CoalitionHash {
  std::size_t operator()(const Coalition& c) const { return c.hash(); }
};

struct ImportanceVector {
  std::vector<double> values;                     // phi per player
  std::optional<std::vector<double>> std_errors;  // sampling only
  double payoff_empty = 0.0;
  double payoff_full = 0.0;
};

// v(S) = scorer(render_inline with S INLINE and the rest DROPPED, source).
double coalition_value(const Dart& dart, const Coalition& coalition, const FidelityScorer& scorer);

// The cooperative game over a subset of a dart's details. Players are
// detail indices; every other detail keeps its current state. Values are
// memoised, so each distinct coalition is scored once.
class CoalitionGame {
 public:
  CoalitionGame(Dart dart, const FidelityScorer& scorer);
  CoalitionGame(Dart dart, const FidelityScorer& scorer, std::vector<std::size_t> players);

  std::size_t size() const { return players_.size(); }
  const std::vector<std::size_t>& players() const { return players_; }
  // Coalition over player positions 0..size()-1.
  double value(const Coalition& coalition) const;
  std::size_t evaluations() const;

 private:
  Dart dart_;
  const FidelityScorer& scorer_;
  std::vector<std::size_t> players_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<Coalition, double, CoalitionHash> memo_;
};

inline constexpr std::size_t kDefaultExactLimit = 12;

// Throws TooManyDetails when the game has more than exact_limit players.
ImportanceVector shapley_exact(const CoalitionGame& game, std::size_t exact_limit = kDefaultExactLimit);
ImportanceVector shapley_exact(const Dart& dart, const FidelityScorer& scorer,
                               std::size_t exact_limit = kDefaultExactLimit);

// Antithetic permutation sampling: permutations are drawn in pairs, each
// followed by its reverse. Standard errors are taken over pair means.
// Throws std::invalid_argument when permutations == 0.
ImportanceVector shapley_sampled(const CoalitionGame& game, std::size_t permutations, std::uint64_t seed);
ImportanceVector shapley_sampled(const Dart& dart, const FidelityScorer& scorer,
                                 std::size_t permutations, std::uint64_t seed);

}  // namespace hyperdart
