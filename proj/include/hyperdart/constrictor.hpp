#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperdart/dart.hpp"
#include "hyperdart/lexicon.hpp"

namespace hyperdart {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool overlaps(const Span& other) const { return begin < other.end && other.begin < end; }
  bool operator==(const Span&) const = default;
};

struct DetailCandidate {
  Span span;
  std::string category;
  DetectorKind detector = DetectorKind::ProperNoun;
  // Lexicon entry when detector == Lexicon.
  std::optional<LexiconEntry> entry;
  // Set for a name in apposition to a generalised noun phrase ("named Rex");
  // holds that phrase's hypernym with an indefinite article.
  std::optional<std::string> referent;
  // Start of the "named"/"called" cue for appositive names.
  std::size_t cue_begin = 0;
};

struct Generalization {
  std::string hypernym;
  std::string category;
  bool operator==(const Generalization&) const = default;
};

struct ConstrictorOptions {
  // Drop names in apposition to a generalised phrase from the core, turning
  // the sentence into a generic event.
  bool absorb_appositives = true;
};

// Time-of-day buckets, [from_hour, to_hour) on the 24-hour clock.
struct TimeBucket {
  int from_hour;
  int to_hour;
  std::string_view phrase;        // bare hypernym, e.g. "early morning"
  std::string_view prepositional; // replacement for "at <time>"
};
const std::vector<TimeBucket>& time_buckets();
const TimeBucket& bucket_for_hour(int hour);

std::vector<DetailCandidate> detect_details(std::string_view paragraph,
                                            const HypernymLexicon& lexicon);

Generalization generalize(const DetailCandidate& candidate, std::string_view paragraph,
                          const HypernymLexicon& lexicon);

// Throws DegenerateInput for empty or whitespace-only paragraphs.
Dart build_dart(std::string_view paragraph, const HypernymLexicon& lexicon,
                const ConstrictorOptions& options = {});

// Splits a document into paragraphs on blank lines; each paragraph keeps its
// exact bytes (no trimming inside).
std::vector<std::string> split_paragraphs(std::string_view document);

// Byte offsets where sentences start.
std::vector<std::size_t> sentence_starts(std::string_view paragraph);

}  // namespace hyperdart
