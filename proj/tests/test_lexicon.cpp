#include <doctest.h>

#include "hyperdart/error.hpp"
#include "hyperdart/lexicon.hpp"
#include "support.hpp"

using namespace hyperdart;

TEST_CASE("parses entries, comments and blank lines") {
  auto lex = HypernymLexicon::from_string(
      "# comment\n\nGerman Shepherd\tdog\tbreed\nmail carrier\tworker\toccupation\n", "t");
  CHECK(lex.size() == 2);
  const LexiconEntry* e = lex.find("german   shepherd");
  REQUIRE(e != nullptr);
  CHECK(e->term == "German Shepherd");
  CHECK(e->hypernym == "dog");
  CHECK(e->category == "breed");
  CHECK(lex.find("poodle") == nullptr);
}

TEST_CASE("rejects self-mapping, duplicates and short lines") {
  CHECK_THROWS_AS(HypernymLexicon::from_string("dog\tdog\tanimal\n"), LexiconError);
  CHECK_THROWS_AS(HypernymLexicon::from_string("dog\tanimal\tx\nDOG\tpet\ty\n"), LexiconError);
  CHECK_THROWS_AS(HypernymLexicon::from_string("dog\tanimal\n"), LexiconError);
}

TEST_CASE("longest match ends on a word boundary") {
  auto lex = HypernymLexicon::from_string(
      "German Shepherd\tdog\tbreed\nGerman Shepherd puppy\tyoung dog\tbreed\nGerman\tlanguage\tx\n");
  std::size_t len = 0;
  std::string text = "a German Shepherd puppy barked";
  const LexiconEntry* e = lex.longest_match(text, 2, len);
  REQUIRE(e != nullptr);
  CHECK(e->hypernym == "young dog");
  CHECK(len == std::string("German Shepherd puppy").size());

  std::string partial = "Germanic tribes";
  CHECK(lex.longest_match(partial, 0, len) == nullptr);
}

TEST_CASE("version changes with content") {
  auto a = HypernymLexicon::from_string("dog\tanimal\tx\n", "same");
  auto b = HypernymLexicon::from_string("dog\tpet\tx\n", "same");
  CHECK(a.version() != b.version());
  CHECK(a.version().rfind("same@", 0) == 0);
}

TEST_CASE("fallbacks per detector kind") {
  CHECK(HypernymLexicon::fallback(DetectorKind::ProperNoun) == "an entity");
  CHECK(HypernymLexicon::fallback(DetectorKind::Numeric) == "a number");
}

TEST_CASE("bundled lexicon loads") {
  auto lex = test::bundled_lexicon();
  CHECK(lex.size() >= 100);
  CHECK(lex.find("German Shepherd") != nullptr);
  // The worked example depends on the mail carrier staying generic.
  CHECK(lex.find("mail carrier") == nullptr);
  CHECK_THROWS_AS(HypernymLexicon::load("/nonexistent/lexicon.tsv"), IoError);
}
