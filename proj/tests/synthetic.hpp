#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/dart.hpp"
#include "hyperdart/lexicon.hpp"

namespace test {

// Lowercase, digit-free vocabulary so that only lexicon details fire.
inline const std::vector<std::string> kSyntheticTerms = {
    "alpha grey",  "bravo grey",  "charlie grey", "delta grey", "echo grey",
    "foxtrot grey", "golf grey",  "hotel grey",   "india grey", "juliet grey"};
inline const std::vector<std::string> kSyntheticFillers = {
    "cat", "runs", "over", "green", "hill", "and", "then", "sleeps", "quietly", "far"};
inline const std::string kDuplicateTerm = "red fox";

// Hypernyms of one or two tokens, none shared with the source vocabulary.
inline const std::vector<std::string> kSyntheticHypernyms = {
    "stuff",  "some thing",   "item",      "other item",  "gizmo",
    "small widget", "doohickey", "some gadget", "object", "odd unit"};

inline hyperdart::HypernymLexicon synthetic_lexicon() {
  std::string tsv;
  for (std::size_t i = 0; i < kSyntheticTerms.size(); ++i) {
    tsv += kSyntheticTerms[i] + "\t" + kSyntheticHypernyms[i] + "\tkind\n";
  }
  tsv += kDuplicateTerm + "\tanimal\tkind\n";
  return hyperdart::HypernymLexicon::from_string(tsv, "synthetic");
}

// A sentence with `details` distinct lexicon terms between random fillers,
// optionally followed by the duplicated term twice in a row.
inline std::string synthetic_sentence(std::mt19937_64& rng, std::size_t details, bool duplicate_pair) {
  std::vector<std::string> terms = kSyntheticTerms;
  std::shuffle(terms.begin(), terms.end(), rng);
  std::uniform_int_distribution<std::size_t> filler(0, kSyntheticFillers.size() - 1);
  std::uniform_int_distribution<int> gap(0, 2);
  std::string s = kSyntheticFillers[filler(rng)];
  auto add_fillers = [&] {
    for (int g = gap(rng); g > 0; --g) s += " " + kSyntheticFillers[filler(rng)];
  };
  for (std::size_t i = 0; i < details; ++i) {
    add_fillers();
    s += " " + terms[i];
  }
  if (duplicate_pair) {
    add_fillers();
    s += " " + kDuplicateTerm + " " + kDuplicateTerm;
  }
  add_fillers();
  return s + ".";
}

// Appends a detail whose INLINE and DROPPED renderings coincide.
inline hyperdart::Dart with_dummy(hyperdart::Dart dart) {
  hyperdart::Detail d;
  d.index = dart.details.size();
  d.category = "dummy";
  d.hypernym = "nothing";
  d.surface = "nothing";
  hyperdart::Edit e;
  e.detail = d.index;
  e.at = dart.core.size();
  e.length = 0;
  dart.details.push_back(d);
  dart.edits.push_back(e);
  return dart;
}

}  // namespace test
