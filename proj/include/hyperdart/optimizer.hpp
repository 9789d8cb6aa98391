#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hyperdart/dart.hpp"
#include "hyperdart/gateway.hpp"
#include "hyperdart/importance.hpp"
#include "hyperdart/metrics.hpp"
#include "hyperdart/scoring.hpp"

namespace hyperdart {

using Ensemble = std::vector<std::shared_ptr<const FidelityScorer>>;

// Lexical scorer plus an embedding scorer on `embed_profile`. A gateway
// holding the built-in mocks is created when none is given.
Ensemble default_ensemble(std::shared_ptr<ModelGateway> gateway = nullptr,
                          const std::string& embed_profile = "mock-embed-a");

struct CompressionPolicy {
  double min_fidelity = 0.85;
  std::optional<double> target_token_ratio;
  // Verification scorers; the first one also drives importance.
  Ensemble ensemble;
  // Defaults to twice the detail count.
  std::optional<std::size_t> max_reinstatements;
  // Null means the whitespace tokenizer.
  std::shared_ptr<const Tokenizer> tokenizer;
  std::size_t exact_limit = kDefaultExactLimit;
  // Used when the free details outnumber exact_limit.
  std::size_t sample_permutations = 128;
  std::uint64_t seed = 7;

  const Tokenizer& token_counter() const;
  // Throws std::invalid_argument on an empty ensemble or out-of-range knobs.
  void check() const;
};

struct VerificationReport {
  std::vector<std::pair<std::string, double>> scores;  // ensemble order
  std::vector<std::string> failing;
  double compatibility = 0.0;  // minimum score
  bool pass = false;
};

enum class TransitionKind { Demote, Reinstate };

struct Transition {
  TransitionKind kind = TransitionKind::Demote;
  std::size_t detail = 0;
  DetailState from = DetailState::Inline;
  DetailState to = DetailState::Swapped;
  std::size_t tokens = 0;       // tokens of the text after the transition
  double compatibility = 0.0;   // of that text
  bool passed = false;          // verification outcome (demotions)
};

struct CompressionResult {
  Dart dart;
  std::string compressed_text;
  std::size_t tokens_original = 0;
  std::size_t tokens_compressed = 0;
  double compression_ratio = 1.0;
  std::vector<std::pair<std::string, double>> fidelity;
  double compatibility = 1.0;
  std::vector<Transition> trace;
  std::size_t reinstatements = 0;
  std::string tokenizer;
};

// Throws std::invalid_argument on an empty ensemble; ScorerFailure
// propagates from the scorers.
VerificationReport verify(std::string_view compressed_text, std::string_view original,
                          const CompressionPolicy& policy);

// Greedy importance-guided demotion INLINE -> SWAPPED -> DROPPED with
// verification after every step and reinstatement on failure. A demotion
// that would raise the token count is skipped and its detail frozen.
// Throws InvalidDart unless every detail starts INLINE.
CompressionResult compress(const Dart& dart, const CompressionPolicy& policy);

// Applies every transition's target state in order.
Dart replay(const Dart& initial, const std::vector<Transition>& trace);

}  // namespace hyperdart
