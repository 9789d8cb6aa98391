#include "hyperdart/importance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hyperdart/error.hpp"
#include "hyperdart/recomposer.hpp"

namespace hyperdart {

Coalition::Coalition(std::initializer_list<std::size_t> members) {
  for (std::size_t i : members) insert(i);
}

Coalition Coalition::all(std::size_t n) {
  Coalition c;
  for (std::size_t i = 0; i < n; ++i) c.insert(i);
  return c;
}

bool Coalition::contains(std::size_t i) const {
  std::size_t w = i / 64;
  return w < words_.size() && ((words_[w] >> (i % 64)) & 1U);
}

void Coalition::insert(std::size_t i) {
  std::size_t w = i / 64;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (i % 64);
}

void Coalition::erase(std::size_t i) {
  std::size_t w = i / 64;
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (i % 64));
  trim();
}

void Coalition::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

std::size_t Coalition::size() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::vector<std::size_t> Coalition::members() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::size_t b = 0; b < 64; ++b) {
      if ((words_[w] >> b) & 1U) out.push_back(w * 64 + b);
    }
  }
  return out;
}

bool Coalition::operator==(const Coalition& other) const { return words_ == other.words_; }

std::size_t Coalition::hash() const {
  std::size_t h = 1469598103934665603ULL;
  for (std::uint64_t w : words_) h = (h ^ w) * 1099511628211ULL;
  return h;
}

double coalition_value(const Dart& dart, const Coalition& coalition, const FidelityScorer& scorer) {
  std::vector<DetailState> states(dart.size(), DetailState::Dropped);
  for (std::size_t i : coalition.members()) {
    if (i >= dart.size()) throw InvalidDart("coalition member outside the dart's details");
    states[i] = DetailState::Inline;
  }
  return scorer.score(render_inline(dart, states), dart.source);
}

CoalitionGame::CoalitionGame(Dart dart, const FidelityScorer& scorer)
    : dart_(std::move(dart)), scorer_(scorer) {
  players_.resize(dart_.size());
  std::iota(players_.begin(), players_.end(), 0);
}

CoalitionGame::CoalitionGame(Dart dart, const FidelityScorer& scorer, std::vector<std::size_t> players)
    : dart_(std::move(dart)), scorer_(scorer), players_(std::move(players)) {
  for (std::size_t p : players_) {
    if (p >= dart_.size()) throw InvalidDart("game player outside the dart's details");
  }
}

double CoalitionGame::value(const Coalition& coalition) const {
  {
    std::lock_guard lock(mutex_);
    auto it = memo_.find(coalition);
    if (it != memo_.end()) return it->second;
  }
  std::vector<DetailState> states = states_of(dart_);
  for (std::size_t k = 0; k < players_.size(); ++k) {
    states[players_[k]] = coalition.contains(k) ? DetailState::Inline : DetailState::Dropped;
  }
  double v = scorer_.score(render_inline(dart_, states), dart_.source);
  std::lock_guard lock(mutex_);
  memo_.emplace(coalition, v);
  return v;
}

std::size_t CoalitionGame::evaluations() const {
  std::lock_guard lock(mutex_);
  return memo_.size();
}

ImportanceVector shapley_exact(const CoalitionGame& game, std::size_t exact_limit) {
  const std::size_t n = game.size();
  if (n > exact_limit) throw TooManyDetails(n, exact_limit);
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<double> v(subsets);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    Coalition c;
    for (std::size_t i = 0; i < n; ++i) {
      if ((mask >> i) & 1U) c.insert(i);
    }
    v[mask] = game.value(c);
  }
  // weight[s] = s! (n - s - 1)! / n!
  std::vector<double> weight(n > 0 ? n : 1);
  for (std::size_t s = 0; s < n; ++s) {
    double w = 1.0 / static_cast<double>(n);
    for (std::size_t k = 1; k <= s; ++k) {
      w *= static_cast<double>(k) / static_cast<double>(n - s - 1 + k);
    }
    weight[s] = w;
  }
  ImportanceVector out;
  out.values.assign(n, 0.0);
  out.payoff_empty = v[0];
  out.payoff_full = v[subsets - 1];
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    double phi = 0.0;
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      if (mask & bit) continue;
      double marginal = v[mask | bit] - v[mask];
      if (marginal != 0.0) phi += weight[static_cast<std::size_t>(__builtin_popcountll(mask))] * marginal;
    }
    out.values[i] = phi;
  }
  return out;
}

ImportanceVector shapley_exact(const Dart& dart, const FidelityScorer& scorer, std::size_t exact_limit) {
  if (dart.size() > exact_limit) throw TooManyDetails(dart.size(), exact_limit);
  return shapley_exact(CoalitionGame(dart, scorer), exact_limit);
}

ImportanceVector shapley_sampled(const CoalitionGame& game, std::size_t permutations, std::uint64_t seed) {
  if (permutations == 0) throw std::invalid_argument("permutation count must be at least 1");
  const std::size_t n = game.size();
  ImportanceVector out;
  out.values.assign(n, 0.0);
  out.payoff_empty = game.value(Coalition{});
  out.payoff_full = game.value(Coalition::all(n));

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> pair_sum(n, 0.0);
  std::vector<double> mean(n, 0.0), m2(n, 0.0);
  std::size_t pairs = 0;
  std::size_t in_pair = 0;

  auto close_pair = [&]() {
    ++pairs;
    for (std::size_t i = 0; i < n; ++i) {
      double x = pair_sum[i] / static_cast<double>(in_pair);
      double delta = x - mean[i];
      mean[i] += delta / static_cast<double>(pairs);
      m2[i] += delta * (x - mean[i]);
      pair_sum[i] = 0.0;
    }
    in_pair = 0;
  };

  for (std::size_t p = 0; p < permutations; ++p) {
    if (p % 2 == 0) {
      std::shuffle(order.begin(), order.end(), rng);
    } else {
      std::reverse(order.begin(), order.end());
    }
    Coalition c;
    double previous = out.payoff_empty;
    for (std::size_t k = 0; k < n; ++k) {
      c.insert(order[k]);
      double current = k + 1 == n ? out.payoff_full : game.value(c);
      double marginal = current - previous;
      out.values[order[k]] += marginal;
      pair_sum[order[k]] += marginal;
      previous = current;
    }
    ++in_pair;
    if (in_pair == 2) close_pair();
  }
  if (in_pair > 0) close_pair();
  std::vector<double> se(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.values[i] /= static_cast<double>(permutations);
    if (pairs > 1) se[i] = std::sqrt(m2[i] / static_cast<double>(pairs - 1) / static_cast<double>(pairs));
  }
  out.std_errors = std::move(se);
  return out;
}

ImportanceVector shapley_sampled(const Dart& dart, const FidelityScorer& scorer,
                                 std::size_t permutations, std::uint64_t seed) {
  return shapley_sampled(CoalitionGame(dart, scorer), permutations, seed);
}

}  // namespace hyperdart
