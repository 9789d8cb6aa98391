#include "hyperdart/scoring.hpp"

#include <algorithm>

#include "hyperdart/error.hpp"

namespace hyperdart {

LexicalScorer::LexicalScorer(std::shared_ptr<const Tokenizer> tokenizer)
    : tokenizer_(std::move(tokenizer)) {}

std::string LexicalScorer::id() const {
  return tokenizer_ ? "rouge-l/" + tokenizer_->id() : "rouge-l";
}

double LexicalScorer::score(std::string_view candidate, std::string_view reference) const {
  const Tokenizer& tok = tokenizer_ ? *tokenizer_ : whitespace_tokenizer();
  return rouge_l(candidate, reference, tok).f;
}

EmbeddingScorer::EmbeddingScorer(std::shared_ptr<const Embedder> embedder)
    : embedder_(std::move(embedder)) {
  if (!embedder_) throw Error("embedding scorer needs an embedder");
}

std::string EmbeddingScorer::id() const { return "embedding/" + embedder_->id(); }

double EmbeddingScorer::score(std::string_view candidate, std::string_view reference) const {
  try {
    return std::max(0.0, embedding_similarity(candidate, reference, *embedder_));
  } catch (const ScorerFailure&) {
    throw;
  } catch (const std::exception& err) {
    throw ScorerFailure(id(), err.what());
  }
}

}  // namespace hyperdart
