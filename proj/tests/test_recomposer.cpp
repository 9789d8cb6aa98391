#include <doctest.h>

#include "golden.hpp"
#include "hyperdart/constrictor.hpp"
#include "hyperdart/error.hpp"
#include "hyperdart/recomposer.hpp"
#include "support.hpp"

using namespace hyperdart;

namespace {

Dart rex() { return build_dart(test::kRex, test::minimal_lexicon()); }
Dart scheduling() { return build_dart(test::kScheduling, test::minimal_lexicon()); }

}  // namespace

TEST_CASE("Rex renders at every granularity") {
  Dart d = rex();
  CHECK(render(d, Granularity::Full) ==
        "A dog barked loudly at a mail carrier. (Details: breed=German Shepherd, name=Rex, time=7:00 AM)");
  CHECK(render(d, Granularity::Core) == "A dog barked loudly at a mail carrier.");
  CHECK(render(d, Granularity::Swapped) ==
        "A dog barked loudly at a mail carrier. (Details: [0]=breed, [1]=name, [2]=time)");
  CHECK_THROWS_AS(render(d, Granularity::Regenerated), Error);
}

TEST_CASE("FULL tail follows detail states") {
  Dart d = with_state(with_state(rex(), 0, DetailState::Swapped), 2, DetailState::Dropped);
  CHECK(render(d, Granularity::Full) ==
        "A dog barked loudly at a mail carrier. (Details: [0]=breed, name=Rex)");
  std::vector<DetailState> dropped(3, DetailState::Dropped);
  CHECK(render(with_states(rex(), dropped), Granularity::Full) == "A dog barked loudly at a mail carrier.");
  CHECK(render(with_states(rex(), dropped), Granularity::Swapped) == "A dog barked loudly at a mail carrier.");
}

TEST_CASE("inline rendering") {
  Dart d = scheduling();
  CHECK(render_inline(d) == test::kScheduling);
  CHECK(render_inline(d, {DetailState::Swapped}) ==
        "Let's schedule the meeting downtown in the early morning [0].");
  CHECK(render_inline(d, {DetailState::Dropped}) == d.core);

  Dart r = rex();
  CHECK(render_inline(r, {DetailState::Dropped, DetailState::Dropped, DetailState::Swapped}) ==
        "A dog barked loudly at a mail carrier [2].");
  CHECK(render_inline(r, {DetailState::Inline, DetailState::Dropped, DetailState::Dropped}) ==
        "The German shepherd barked loudly at a mail carrier.");
  CHECK(render_inline(r, {DetailState::Dropped, DetailState::Inline, DetailState::Dropped}) ==
        "A dog named Rex barked loudly at the mail carrier.");
}

TEST_CASE("invert ignores states") {
  std::vector<DetailState> dropped(3, DetailState::Dropped);
  CHECK(invert(with_states(rex(), dropped)) == test::kRex);
}

TEST_CASE("template generator") {
  TemplateGenerator templ;
  CHECK(templ.generate(rex(), Granularity::Regenerated, {}) == render(rex(), Granularity::Full));
  CHECK(templ.generate(rex(), Granularity::Core, {}) == rex().core);
}

TEST_CASE("model generator recovers the wordy surface") {
  auto gateway = test::mock_gateway();
  ModelGenerator gen(gateway, "mock-gen-a");
  CHECK(gen.id() == "model/mock-gen-a");
  std::string out = gen.generate(scheduling(), Granularity::Regenerated, {});
  CHECK(out.find("7:00 or 10:00am depending on the weather") != std::string::npos);
  CHECK(out.rfind("[mock-gen-a]\n", 0) == 0);

  CHECK_THROWS(ModelGenerator(gateway, "mock-embed-a"));
}

TEST_CASE("reconstruction log records the trace") {
  ReconstructionLog log;
  TemplateGenerator templ;
  reconstruct(scheduling(), Granularity::Full, templ, {}, &log);
  auto records = log.records();
  REQUIRE(records.size() == 1);
  CHECK(records[0].generator == "template");
  std::string text = records[0].str();
  CHECK(text.rfind("RECON v1\n", 0) == 0);
  CHECK(text.find("trace 0\n  hypernym=early morning\n  category=time choice\n  replaced=0\n"
                  "  detail=7:00 or 10:00am depending on the weather\n") != std::string::npos);
  test::check_golden("scheduling.recon", log.str());
}

TEST_CASE("round trip on the bundled passages") {
  auto lex = test::bundled_lexicon();
  for (int p = 1; p <= 5; ++p) {
    auto doc = test::read_file(test::data_dir() / "passages" / ("passage" + std::to_string(p) + ".txt"));
    for (const std::string& para : split_paragraphs(doc)) {
      Dart d = build_dart(para, lex);
      RoundtripReport rep = roundtrip_check(para, d);
      CHECK(rep.lossless());
      CHECK(rep.recovered() == d.size());
      CHECK(rep.inverts_exactly);
    }
  }
  RoundtripReport wrong = roundtrip_check("something else", rex());
  CHECK_FALSE(wrong.inverts_exactly);
  CHECK_FALSE(wrong.lossless());
}
