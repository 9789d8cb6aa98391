#include "hyperdart/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "hyperdart/error.hpp"
#include "hyperdart/text.hpp"

namespace hyperdart {

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> out;
  for (std::string_view piece : text::split_whitespace(text)) out.emplace_back(piece);
  return out;
}

std::size_t WhitespaceTokenizer::count(std::string_view text) const {
  return text::split_whitespace(text).size();
}

const Tokenizer& whitespace_tokenizer() {
  static const WhitespaceTokenizer instance;
  return instance;
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto& outer = a.size() >= b.size() ? a : b;
  const auto& inner = a.size() >= b.size() ? b : a;
  std::vector<std::size_t> row(inner.size() + 1, 0);
  for (const std::string& x : outer) {
    std::size_t diagonal = 0;
    for (std::size_t j = 1; j <= inner.size(); ++j) {
      std::size_t above = row[j];
      row[j] = x == inner[j - 1] ? diagonal + 1 : std::max(row[j], row[j - 1]);
      diagonal = above;
    }
  }
  return row.back();
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference,
                   const Tokenizer& tokenizer) {
  std::vector<std::string> cand = tokenizer.tokenize(candidate);
  std::vector<std::string> ref = tokenizer.tokenize(reference);
  if (cand.empty() && ref.empty()) return {1.0, 1.0, 1.0};
  if (cand.empty() || ref.empty()) return {};
  double lcs = static_cast<double>(lcs_length(cand, ref));
  RougeScore score;
  score.precision = lcs / static_cast<double>(cand.size());
  score.recall = lcs / static_cast<double>(ref.size());
  double sum = score.precision + score.recall;
  score.f = sum > 0 ? 2 * score.precision * score.recall / sum : 0.0;
  return score;
}

std::size_t token_count(std::string_view text, const Tokenizer& tokenizer) {
  return tokenizer.count(text);
}

double compression_ratio(std::string_view original, std::string_view compressed,
                         const Tokenizer& tokenizer) {
  std::size_t base = tokenizer.count(original);
  if (base == 0) throw EmptyOriginal();
  return static_cast<double>(tokenizer.count(compressed)) / static_cast<double>(base);
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 && nb == 0) return 1.0;
  if (na == 0 || nb == 0) return 0.0;
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

double embedding_similarity(std::string_view a, std::string_view b, const Embedder& embedder) {
  auto vectors = embedder.embed({std::string(a), std::string(b)});
  return cosine(vectors.at(0), vectors.at(1));
}

Significance paired_significance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw LengthMismatch(a.size(), b.size());
  if (a.size() < 2) throw TooFewPairs(a.size());
  const std::size_t n = a.size();
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += a[i] - b[i];
  mean /= static_cast<double>(n);
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  double sd = std::sqrt(ss / static_cast<double>(n - 1));
  Significance out;
  out.n = n;
  if (sd == 0.0) {
    out.t_statistic = mean > 0 ? INFINITY : (mean < 0 ? -INFINITY : 0.0);
    out.p_value_one_sided = mean > 0 ? 0.0 : (mean < 0 ? 1.0 : 0.5);
    return out;
  }
  out.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
  boost::math::students_t_distribution<double> dist(static_cast<double>(n - 1));
  out.p_value_one_sided = boost::math::cdf(boost::math::complement(dist, out.t_statistic));
  return out;
}

}  // namespace hyperdart
