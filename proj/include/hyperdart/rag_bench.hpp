#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/lexicon.hpp"
#include "hyperdart/metrics.hpp"
#include "hyperdart/optimizer.hpp"

namespace hyperdart {

struct IngestResult {
  std::string text;
  bool markers_found = true;  // false: whole input kept, caller should warn
};

// Body between the "*** START OF" and "*** END OF" marker lines, with LF
// line endings. Throws EmptyDocument.
IngestResult ingest_gutenberg(std::string_view raw);

struct Chunk {
  std::size_t id = 0;
  std::string text;
  std::size_t begin = 0;  // byte span in the document
  std::size_t end = 0;
  std::size_t tokens = 0;
};

struct ChunkPolicy {
  std::size_t max_tokens = 512;
  std::shared_ptr<const Tokenizer> tokenizer;  // null: whitespace
};

// Blank-line paragraphs; longer ones are split greedily at sentence ends
// and, for overlong sentences, at word boundaries. Pieces keep their
// trailing whitespace, so a paragraph's chunks concatenate back to it.
std::vector<Chunk> chunk_document(std::string_view document, const ChunkPolicy& policy = {});

class TfIdfIndex {
 public:
  using SparseVector = std::map<std::string, double>;

  // Throws std::invalid_argument for an empty chunk list.
  static TfIdfIndex build(const std::vector<Chunk>& chunks);

  // Lowercased ASCII alphanumeric runs.
  static std::vector<std::string> terms(std::string_view text);

  // Top-k chunks by cosine, best first, ties to the lower id. Chunks sharing
  // no term with the query are not returned; a query with no known terms
  // yields an empty list.
  std::vector<std::pair<std::size_t, double>> query(std::string_view text, std::size_t k) const;

  std::size_t size() const { return vectors_.size(); }
  std::size_t df(const std::string& term) const;
  // ln((N + 1) / (df + 1)) + 1
  double idf(const std::string& term) const;
  const SparseVector& vector(std::size_t chunk) const { return vectors_.at(chunk); }

 private:
  SparseVector weigh(std::string_view text) const;

  std::size_t n_ = 0;
  std::map<std::string, std::size_t> df_;
  std::vector<SparseVector> vectors_;
};

struct CompressedChunk {
  std::size_t chunk_id = 0;
  std::optional<CompressionResult> result;
  std::string text;            // compressed text, or the original on failure
  double compatibility = 0.0;  // 0 when compression failed
  double ratio = 1.0;
  std::string error;

  bool ok() const { return result.has_value(); }
};

// build_dart + compress per chunk, in chunk order. Failures are recorded on
// the chunk and the run continues.
std::vector<CompressedChunk> compress_corpus(const std::vector<Chunk>& chunks,
                                             const HypernymLexicon& lexicon,
                                             const CompressionPolicy& policy,
                                             const ConstrictorOptions& options = {},
                                             std::size_t jobs = 1);

struct BenchConfig {
  std::size_t k = 3;
  double threshold = 0.85;
  std::uint64_t seed = 7;
  std::size_t max_tokens = 512;
  std::shared_ptr<const Tokenizer> tokenizer;  // null: whitespace
  CompressionPolicy policy;                    // ensemble required
  ConstrictorOptions constrictor;
  std::size_t jobs = 1;
};

struct Retrieval {
  std::size_t chunk_id = 0;
  double score = 0.0;
  double compatibility = 0.0;
  double ratio = 1.0;
  bool gate = false;  // compressed text used
};

struct QueryRecord {
  std::size_t id = 0;
  std::string query;
  std::vector<Retrieval> hits;
  std::size_t tokens_standard = 0;
  std::size_t tokens_hypernym = 0;
  double rouge_l = 1.0;
};

struct EfficiencyRow {
  std::size_t chunk_id = 0;
  std::size_t tokens_original = 0;
  std::size_t tokens_compressed = 0;
  double efficiency = 0.0;  // 1 - ratio
  double compatibility = 0.0;
};

inline constexpr std::size_t kHistogramBins = 20;
inline constexpr std::size_t kEfficiencyRows = 15;

struct BenchReport {
  std::vector<QueryRecord> records;
  std::vector<EfficiencyRow> efficiency;                // top rows, best first
  std::array<std::size_t, kHistogramBins> histogram{};  // effective ratios over (0, 1]
  std::optional<Significance> significance;             // needs two queries
  double mean_rouge_l = 1.0;
  double mean_ratio = 1.0;
  std::size_t chunks = 0;
  std::size_t failed_chunks = 0;
  bool markers_found = true;
  // Echo of the configuration that produced the report.
  std::map<std::string, std::string> config;
};

std::vector<std::string> load_queries(const std::filesystem::path& path);

// `document` is an ingested body. Queries may be empty (empty report).
BenchReport run_benchmark(std::string_view document, const std::vector<std::string>& queries,
                          const HypernymLexicon& lexicon, const BenchConfig& config);

// Histogram bin of a ratio in (0, 1]: bin b covers (b/20, (b+1)/20].
std::size_t histogram_bin(double ratio);

// Writes report.csv, aggregates.csv, histogram.csv and report.json.
// Throws IoError.
void emit_report(const BenchReport& report, const std::filesystem::path& out_dir);

}  // namespace hyperdart
