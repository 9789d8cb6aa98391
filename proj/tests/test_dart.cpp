#include <doctest.h>

#include "golden.hpp"
#include "hyperdart/constrictor.hpp"
#include "hyperdart/dart.hpp"
#include "hyperdart/error.hpp"
#include "support.hpp"

using namespace hyperdart;

namespace {

Dart rex() { return build_dart(test::kRex, test::minimal_lexicon()); }
Dart scheduling() { return build_dart(test::kScheduling, test::minimal_lexicon()); }

}  // namespace

TEST_CASE("serialization matches the goldens") {
  test::check_golden("rex.dart", serialize_dart(rex()));
  test::check_golden("scheduling.dart", serialize_dart(scheduling()));
}

TEST_CASE("scheduling detail block carries index, category and surface") {
  std::string text = serialize_dart(scheduling());
  CHECK(text.find("detail 0\n") != std::string::npos);
  CHECK(text.find("  category=time choice\n") != std::string::npos);
  CHECK(text.find("  surface=7:00 or 10:00am depending on the weather\n") != std::string::npos);
}

TEST_CASE("serialize and deserialize round trip") {
  for (const Dart& d : {rex(), scheduling()}) {
    Dart back = deserialize_dart(serialize_dart(d));
    CHECK(back == d);
    CHECK(serialize_dart(back) == serialize_dart(d));
  }
  Dart swapped = with_state(rex(), 1, DetailState::Swapped);
  swapped.details[0].importance = 0.25;
  CHECK(deserialize_dart(serialize_dart(swapped)) == swapped);
}

TEST_CASE("json mirror round trip") {
  Dart d = with_state(scheduling(), 0, DetailState::Dropped);
  nlohmann::json j = dart_to_json(d);
  CHECK(j["details"][0]["surface"] == "7:00 or 10:00am depending on the weather");
  CHECK(dart_from_json(j) == d);
}

TEST_CASE("malformed input reports line and column") {
  SUBCASE("bad header") {
    try {
      deserialize_dart("DART v9\n");
      FAIL("expected MalformedDart");
    } catch (const MalformedDart& e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("truncated detail block") {
    std::string text = serialize_dart(scheduling());
    text = text.substr(0, text.find("end\n"));
    CHECK_THROWS_AS(deserialize_dart(text), MalformedDart);
  }
  SUBCASE("unknown state") {
    std::string text = serialize_dart(scheduling());
    auto pos = text.find("state=INLINE");
    text.replace(pos, 12, "state=HIDDEN");
    CHECK_THROWS_AS(deserialize_dart(text), MalformedDart);
  }
}

TEST_CASE("validate rejects broken invariants") {
  Dart d = rex();
  CHECK_NOTHROW(validate(d));

  Dart bad_source = d;
  bad_source.source += "!";
  CHECK_THROWS_AS(validate(bad_source), InvalidDart);

  Dart bad_index = d;
  bad_index.details[1].index = 7;
  CHECK_THROWS_AS(validate(bad_index), InvalidDart);

  Dart empty_surface = d;
  empty_surface.details[2].surface.clear();
  CHECK_THROWS_AS(validate(empty_surface), InvalidDart);
}

TEST_CASE("state helpers return modified copies") {
  Dart d = rex();
  Dart s = with_state(d, 2, DetailState::Dropped);
  CHECK(d.details[2].state == DetailState::Inline);
  CHECK(s.details[2].state == DetailState::Dropped);
  std::vector<DetailState> all(3, DetailState::Swapped);
  CHECK(states_of(with_states(d, all)) == all);
  CHECK_THROWS(with_state(d, 3, DetailState::Dropped));
}

TEST_CASE("splice and hashes") {
  Dart d = rex();
  CHECK(splice_originals(d) == test::kRex);
  CHECK(dart_hash(d) == dart_hash(rex()));
  CHECK(dart_hash(d) != dart_hash(with_state(d, 0, DetailState::Swapped)));
  CHECK(d.source_hash() != scheduling().source_hash());
}

TEST_CASE("state and granularity names") {
  CHECK(to_string(DetailState::Swapped) == "SWAPPED");
  CHECK(parse_detail_state("DROPPED") == DetailState::Dropped);
  CHECK_FALSE(parse_detail_state("dropped-ish").has_value());
  CHECK(parse_granularity("FULL") == Granularity::Full);
  CHECK(to_string(Granularity::Regenerated) == "REGENERATED");
}
