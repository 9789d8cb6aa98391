#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hyperdart {

enum class DetectorKind { ProperNoun, Numeric, Time, Lexicon };

std::string_view to_string(DetectorKind kind);

struct LexiconEntry {
  std::string term;      // canonical spelling as written in the lexicon
  std::string hypernym;  // generalised replacement
  std::string category;
};

// Surface term -> (hypernym, category), matched case-insensitively with
// whitespace runs treated as single spaces.
//
// File format: UTF-8, one `term<TAB>hypernym<TAB>category` entry per line,
// `#` starts a comment line, blank lines are ignored.
class HypernymLexicon {
 public:
  HypernymLexicon() = default;

  static HypernymLexicon from_string(std::string_view content, std::string name = "inline");
  static HypernymLexicon load(const std::filesystem::path& path);

  // Throws LexiconError if the term maps to itself or duplicates an entry.
  void add(LexiconEntry entry);

  const LexiconEntry* find(std::string_view term) const;

  // Longest entry matching `text` at byte offset `pos`; returns the matched
  // byte length through `length`. Matches end on a word boundary.
  const LexiconEntry* longest_match(std::string_view text, std::size_t pos,
                                    std::size_t& length) const;

  // Generic hypernym used when a detector kind has no lexicon hit.
  static std::string_view fallback(DetectorKind kind);

  std::size_t size() const { return entries_.size(); }
  const std::string& name() const { return name_; }
  // "<name>@<fnv1a of the entries>", recorded in dart provenance.
  std::string version() const;

 private:
  static std::string key_of(std::string_view term);

  std::string name_ = "empty";
  std::vector<LexiconEntry> entries_;
  std::map<std::string, std::size_t> by_key_;
  // First word (case-folded) -> entry ids, longest term first.
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_first_word_;
};

}  // namespace hyperdart
