#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdart {

class Tokenizer {
 public:
  virtual ~Tokenizer() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
  virtual std::size_t count(std::string_view text) const { return tokenize(text).size(); }
};

// Splits on runs of Unicode whitespace; tokens are kept byte-for-byte.
class WhitespaceTokenizer final : public Tokenizer {
 public:
  std::string id() const override { return "whitespace"; }
  std::vector<std::string> tokenize(std::string_view text) const override;
  std::size_t count(std::string_view text) const override;
};

const Tokenizer& whitespace_tokenizer();

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
};

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b);

// ROUGE-L with beta = 1. Two empty texts score 1; one empty text scores 0.
RougeScore rouge_l(std::string_view candidate, std::string_view reference,
                   const Tokenizer& tokenizer = whitespace_tokenizer());

std::size_t token_count(std::string_view text, const Tokenizer& tokenizer = whitespace_tokenizer());

// compressed / original token counts. Throws EmptyOriginal.
double compression_ratio(std::string_view original, std::string_view compressed,
                         const Tokenizer& tokenizer = whitespace_tokenizer());

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual std::string id() const = 0;
  virtual std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const = 0;
};

// Cosine similarity. Two zero vectors are identical (1); one zero vector
// against a non-zero one gives 0.
double cosine(const std::vector<double>& a, const std::vector<double>& b);

double embedding_similarity(std::string_view a, std::string_view b, const Embedder& embedder);

struct Significance {
  double t_statistic = 0.0;
  double p_value_one_sided = 0.5;
  std::size_t n = 0;
};

// Paired one-sided t-test of mean(a - b) > 0. With zero variance the
// p-value is 0 for a positive mean difference and 0.5 for a zero one
// (1 for a negative one). Throws LengthMismatch and TooFewPairs.
Significance paired_significance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace hyperdart
