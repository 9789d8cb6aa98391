#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "hyperdart/metrics.hpp"

namespace hyperdart {

// Fidelity of a candidate text to a reference, in [0, 1]. Scorers that
// cannot produce a score throw ScorerFailure.
class FidelityScorer {
 public:
  virtual ~FidelityScorer() = default;
  virtual std::string id() const = 0;
  virtual double score(std::string_view candidate, std::string_view reference) const = 0;
};

// ROUGE-L F1.
class LexicalScorer final : public FidelityScorer {
 public:
  explicit LexicalScorer(std::shared_ptr<const Tokenizer> tokenizer = nullptr);
  std::string id() const override;
  double score(std::string_view candidate, std::string_view reference) const override;

 private:
  std::shared_ptr<const Tokenizer> tokenizer_;
};

// Embedding cosine, floored at 0.
class EmbeddingScorer final : public FidelityScorer {
 public:
  explicit EmbeddingScorer(std::shared_ptr<const Embedder> embedder);
  std::string id() const override;
  double score(std::string_view candidate, std::string_view reference) const override;

 private:
  std::shared_ptr<const Embedder> embedder_;
};

}  // namespace hyperdart
