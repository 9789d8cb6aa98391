#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/error.hpp"
#include "hyperdart/optimizer.hpp"
#include "hyperdart/recomposer.hpp"
#include "support.hpp"

using namespace hyperdart;

namespace {

Dart scheduling() { return build_dart(test::kScheduling, test::minimal_lexicon()); }
Dart rex() { return build_dart(test::kRex, test::minimal_lexicon()); }

// A scorer that always fails to produce a score.
class BrokenScorer final : public FidelityScorer {
 public:
  std::string id() const override { return "broken"; }
  double score(std::string_view, std::string_view) const override {
    throw ScorerFailure("broken", "unreachable");
  }
};

void check_invariants(const Dart& initial, const CompressionResult& r, const CompressionPolicy& policy) {
  CHECK(r.compatibility >= policy.min_fidelity);
  CHECK(r.compression_ratio <= 1.0);
  CHECK(r.tokens_compressed <= r.tokens_original);
  CHECK(states_of(replay(initial, r.trace)) == states_of(r.dart));
  CHECK(r.compressed_text == render_inline(r.dart));
  CHECK(invert(r.dart) == initial.source);
}

}  // namespace

TEST_CASE("scheduling dart under the default floor stays inline") {
  // The only demotion scores 0.52 against the source, below 0.85.
  CompressionPolicy policy = test::default_policy();
  CompressionResult r = compress(scheduling(), policy);
  CHECK(r.compression_ratio == 1.0);
  CHECK(r.compressed_text == test::kScheduling);
  CHECK(r.reinstatements == 1);
  check_invariants(scheduling(), r, policy);
}

TEST_CASE("scheduling dart with a relaxed floor reaches the indicator") {
  CompressionPolicy policy = test::lexical_policy(0.0);
  policy.target_token_ratio = 0.8;
  CompressionResult r = compress(scheduling(), policy);
  CHECK(r.compressed_text == "Let's schedule the meeting downtown in the early morning [0].");
  CHECK(r.tokens_original == 13);
  CHECK(r.tokens_compressed == 10);
  CHECK(r.compression_ratio <= 0.8);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0].to == DetailState::Swapped);
  // ROUGE-L F of the indicator text: LCS 6 over 10 and 13 tokens.
  CHECK(std::abs(r.compatibility - 12.0 / 23.0) <= 1e-12);
}

TEST_CASE("relaxed floor without a target drops the detail") {
  CompressionResult r = compress(scheduling(), test::lexical_policy(0.0));
  CHECK(r.dart.details[0].state == DetailState::Dropped);
  CHECK(r.compressed_text == scheduling().core);
}

TEST_CASE("Rex demotes in ascending importance") {
  CompressionPolicy policy = test::lexical_policy(0.0);
  CompressionResult r = compress(rex(), policy);
  REQUIRE_FALSE(r.trace.empty());
  // Name has the lowest Shapley value, then breed, then time.
  CHECK(r.trace.front().detail == 1);
  check_invariants(rex(), r, policy);
  for (const Detail& d : r.dart.details) CHECK(d.importance.has_value());
}

TEST_CASE("passage paragraphs honour the floor with the default ensemble") {
  CompressionPolicy policy = test::default_policy();
  auto lex = test::bundled_lexicon();
  auto doc = test::read_file(test::data_dir() / "passages" / "passage3.txt");
  for (const std::string& para : split_paragraphs(doc)) {
    Dart d = build_dart(para, lex);
    CompressionResult r = compress(d, policy);
    check_invariants(d, r, policy);
    CHECK(r.fidelity.size() == 2);
  }
}

TEST_CASE("reinstatement budget bounds the run") {
  CompressionPolicy policy = test::default_policy();
  policy.max_reinstatements = 0;
  CompressionResult r = compress(scheduling(), policy);
  CHECK(r.reinstatements == 1);
  CHECK(r.compression_ratio == 1.0);
}

TEST_CASE("verify reports every scorer and the minimum") {
  CompressionPolicy policy = test::default_policy();
  VerificationReport v = verify("a b c", "a b c", policy);
  CHECK(v.pass);
  CHECK(v.compatibility == 1.0);
  REQUIRE(v.scores.size() == 2);
  CHECK(v.scores[0].first == "rouge-l");
  CHECK(v.scores[1].first == "embedding/mock-embed-a");

  VerificationReport low = verify("x", "a b c", policy);
  CHECK_FALSE(low.pass);
  CHECK(low.failing.size() >= 1);
}

TEST_CASE("policy and input checks") {
  CompressionPolicy empty;
  CHECK_THROWS_AS(compress(rex(), empty), std::invalid_argument);
  CompressionPolicy bad = test::lexical_policy(1.5);
  CHECK_THROWS_AS(compress(rex(), bad), std::invalid_argument);
  CompressionPolicy bad_target = test::lexical_policy();
  bad_target.target_token_ratio = 0.0;
  CHECK_THROWS_AS(compress(rex(), bad_target), std::invalid_argument);
  CHECK_THROWS_AS(compress(with_state(rex(), 0, DetailState::Swapped), test::lexical_policy()),
                  InvalidDart);

  CompressionPolicy broken;
  broken.ensemble = {std::make_shared<BrokenScorer>()};
  CHECK_THROWS_AS(compress(rex(), broken), ScorerFailure);
}

TEST_CASE("sampled importance is used above the exact limit") {
  CompressionPolicy policy = test::lexical_policy(0.0);
  policy.exact_limit = 1;
  policy.sample_permutations = 64;
  CompressionResult a = compress(rex(), policy);
  CompressionResult b = compress(rex(), policy);
  CHECK(a.dart == b.dart);
  CHECK(a.trace.size() == b.trace.size());
}
