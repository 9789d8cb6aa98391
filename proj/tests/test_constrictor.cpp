#include <doctest.h>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/error.hpp"
#include "support.hpp"

using namespace hyperdart;

namespace {

std::string surface_of(std::string_view text, const DetailCandidate& c) {
  return std::string(text.substr(c.span.begin, c.span.size()));
}

}  // namespace

TEST_CASE("Rex sentence candidates") {
  auto lex = test::minimal_lexicon();
  auto cands = detect_details(test::kRex, lex);
  REQUIRE(cands.size() == 3);
  CHECK(surface_of(test::kRex, cands[0]) == "German shepherd");
  CHECK(cands[0].detector == DetectorKind::Lexicon);
  CHECK(surface_of(test::kRex, cands[1]) == "Rex");
  CHECK(cands[1].detector == DetectorKind::ProperNoun);
  CHECK(cands[1].referent == std::optional<std::string>("a dog"));
  CHECK(surface_of(test::kRex, cands[2]) == "7:00 AM");
  CHECK(cands[2].detector == DetectorKind::Time);
}

TEST_CASE("plain sentence yields no candidates") {
  CHECK(detect_details("the dog barked.", HypernymLexicon{}).empty());
}

TEST_CASE("generalize falls back per detector kind") {
  std::string text = "We met Rex yesterday.";
  auto cands = detect_details(text, HypernymLexicon{});
  REQUIRE(cands.size() == 1);
  CHECK(generalize(cands[0], text, HypernymLexicon{}) == Generalization{"an entity", "name"});

  auto rex = detect_details(test::kRex, test::minimal_lexicon());
  CHECK(generalize(rex[1], test::kRex, test::minimal_lexicon()).hypernym == "a dog");
  CHECK(generalize(rex[0], test::kRex, test::minimal_lexicon()) == Generalization{"dog", "breed"});
}

TEST_CASE("time buckets") {
  CHECK(bucket_for_hour(4).phrase == "early morning");
  CHECK(bucket_for_hour(8).phrase == "early morning");
  CHECK(bucket_for_hour(9).phrase == "morning");
  CHECK(bucket_for_hour(11).phrase == "morning");
  CHECK(bucket_for_hour(12).phrase == "midday");
  CHECK(bucket_for_hour(15).phrase == "afternoon");
  CHECK(bucket_for_hour(19).phrase == "evening");
  CHECK(bucket_for_hour(23).phrase == "night");
  CHECK(bucket_for_hour(2).phrase == "night");
}

TEST_CASE("time choice with qualifier merges into one candidate") {
  auto cands = detect_details(test::kScheduling, HypernymLexicon{});
  REQUIRE(cands.size() == 1);
  CHECK(surface_of(test::kScheduling, cands[0]) == "7:00 or 10:00am depending on the weather");
  CHECK(cands[0].category == "time choice");
}

TEST_CASE("numeric classes") {
  std::string text = "In 1915 about 40 people paid 12% more.";
  auto cands = detect_details(text, HypernymLexicon{});
  REQUIRE(cands.size() == 3);
  CHECK(generalize(cands[0], text, HypernymLexicon{}) == Generalization{"the 1910s", "year"});
  CHECK(generalize(cands[1], text, HypernymLexicon{}) == Generalization{"several", "count"});
  CHECK(generalize(cands[2], text, HypernymLexicon{}).category == "percentage");
}

TEST_CASE("build_dart on the worked examples") {
  auto lex = test::minimal_lexicon();
  Dart rex = build_dart(test::kRex, lex);
  CHECK(rex.core == "A dog barked loudly at a mail carrier.");
  REQUIRE(rex.details.size() == 3);
  CHECK(rex.details[0].surface == "German Shepherd");
  CHECK(rex.details[1].category == "name");
  CHECK(rex.details[2].surface == "7:00 AM");
  CHECK(rex.provenance.find("absorb=on") != std::string::npos);

  Dart plain = build_dart(test::kRex, lex, ConstrictorOptions{.absorb_appositives = false});
  CHECK(plain.core == "A dog named an entity barked loudly at the mail carrier in the early morning.");
  CHECK(plain.provenance.find("absorb=off") != std::string::npos);

  Dart sched = build_dart(test::kScheduling, lex);
  CHECK(sched.core == "Let's schedule the meeting downtown in the early morning.");
}

TEST_CASE("determinism and coverage monotonicity") {
  auto small = test::minimal_lexicon();
  auto big = test::bundled_lexicon();
  for (int p = 1; p <= 5; ++p) {
    auto doc = test::read_file(test::data_dir() / "passages" / ("passage" + std::to_string(p) + ".txt"));
    for (const std::string& para : split_paragraphs(doc)) {
      CHECK(build_dart(para, big) == build_dart(para, big));
      auto few = detect_details(para, small);
      auto many = detect_details(para, big);
      for (const auto& c : few) {
        bool covered = false;
        for (const auto& m : many) covered = covered || (m.span.begin <= c.span.begin && c.span.end <= m.span.end);
        CHECK_MESSAGE(covered, para.substr(c.span.begin, c.span.size()));
      }
    }
  }
}

TEST_CASE("every bundled paragraph builds a valid dart") {
  auto lex = test::bundled_lexicon();
  std::size_t paragraphs = 0;
  for (int p = 1; p <= 5; ++p) {
    auto doc = test::read_file(test::data_dir() / "passages" / ("passage" + std::to_string(p) + ".txt"));
    for (const std::string& para : split_paragraphs(doc)) {
      ++paragraphs;
      Dart d = build_dart(para, lex);
      CHECK_NOTHROW(validate(d));
      CHECK(splice_originals(d) == para);
    }
  }
  CHECK(paragraphs == 28);
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(build_dart("", HypernymLexicon{}), DegenerateInput);
  CHECK_THROWS_AS(build_dart(" \n\t ", HypernymLexicon{}), DegenerateInput);
}

TEST_CASE("split paragraphs and sentence starts") {
  auto paras = split_paragraphs("One.\nStill one.\n\n\nTwo.\n");
  REQUIRE(paras.size() == 2);
  CHECK(paras[0] == "One.\nStill one.");
  CHECK(paras[1] == "Two.");
  CHECK(sentence_starts("It ran. Then at 7:30 it stopped.") == std::vector<std::size_t>{0, 8});
}
