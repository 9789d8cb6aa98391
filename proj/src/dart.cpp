#include "hyperdart/dart.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "hyperdart/error.hpp"
#include "hyperdart/text.hpp"

namespace hyperdart {

std::string_view to_string(DetailState state) {
  switch (state) {
    case DetailState::Inline: return "INLINE";
    case DetailState::Swapped: return "SWAPPED";
    case DetailState::Dropped: return "DROPPED";
  }
  return "INLINE";
}

std::optional<DetailState> parse_detail_state(std::string_view name) {
  if (name == "INLINE") return DetailState::Inline;
  if (name == "SWAPPED") return DetailState::Swapped;
  if (name == "DROPPED") return DetailState::Dropped;
  return std::nullopt;
}

std::string_view to_string(Granularity granularity) {
  switch (granularity) {
    case Granularity::Core: return "CORE";
    case Granularity::Swapped: return "SWAPPED";
    case Granularity::Full: return "FULL";
    case Granularity::Regenerated: return "REGENERATED";
  }
  return "FULL";
}

std::optional<Granularity> parse_granularity(std::string_view name) {
  std::string upper;
  for (char c : name) upper += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "CORE") return Granularity::Core;
  if (upper == "SWAPPED") return Granularity::Swapped;
  if (upper == "FULL") return Granularity::Full;
  if (upper == "REGENERATED") return Granularity::Regenerated;
  return std::nullopt;
}

std::string_view to_string(EditRole role) {
  return role == EditRole::Slot ? "slot" : "agreement";
}

std::uint64_t Dart::source_hash() const { return text::fnv1a64(source); }

std::size_t Dart::slot_of(std::size_t detail) const {
  for (std::size_t e = 0; e < edits.size(); ++e) {
    if (edits[e].detail == detail && edits[e].role == EditRole::Slot) return e;
  }
  throw InvalidDart(fmt::format("detail {} has no slot edit", detail));
}

std::string splice_originals(const Dart& dart) {
  std::string out;
  std::size_t cursor = 0;
  for (const Edit& edit : dart.edits) {
    out.append(dart.core, cursor, edit.at - cursor);
    out += edit.original;
    cursor = edit.at + edit.length;
  }
  out.append(dart.core, cursor, std::string::npos);
  return out;
}

std::string_view verbatim_surface(const Dart& dart, std::size_t detail) {
  const Edit& slot = dart.edits[dart.slot_of(detail)];
  const Detail& d = dart.details[detail];
  std::size_t pos = text::ifind(slot.original, d.surface);
  if (pos == std::string::npos) return {};
  return std::string_view(slot.original).substr(pos, d.surface.size());
}

void validate(const Dart& dart) {
  const std::size_t n = dart.details.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Detail& d = dart.details[i];
    if (d.index != i) {
      throw InvalidDart(fmt::format("detail at position {} has index {}", i, d.index));
    }
    if (d.surface.empty()) throw InvalidDart(fmt::format("detail {} has an empty surface", i));
    if (d.hypernym.empty()) throw InvalidDart(fmt::format("detail {} has an empty hypernym", i));
    if (d.category.empty()) throw InvalidDart(fmt::format("detail {} has an empty category", i));
    if (text::ifind(dart.source, d.surface) == std::string::npos) {
      throw InvalidDart(fmt::format("surface of detail {} does not occur in the source", i));
    }
  }
  std::vector<int> slots(n, 0);
  std::size_t floor = 0;
  for (std::size_t e = 0; e < dart.edits.size(); ++e) {
    const Edit& edit = dart.edits[e];
    if (edit.detail >= n) {
      throw InvalidDart(fmt::format("edit {} refers to missing detail {}", e, edit.detail));
    }
    if (edit.at < floor || edit.at + edit.length > dart.core.size()) {
      throw InvalidDart(fmt::format("edit {} is out of order or out of bounds", e));
    }
    floor = edit.at + edit.length;
    if (edit.role == EditRole::Slot) ++slots[edit.detail];
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (slots[i] != 1) {
      throw InvalidDart(fmt::format("detail {} has {} slot edits", i, slots[i]));
    }
    if (verbatim_surface(dart, i).empty()) {
      throw InvalidDart(fmt::format("slot of detail {} does not contain its surface", i));
    }
  }
  if (splice_originals(dart) != dart.source) {
    throw InvalidDart("splicing the edits back does not reproduce the source");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (text::contains_word_bounded(dart.core, verbatim_surface(dart, i))) {
      throw InvalidDart(fmt::format("core still contains the surface of detail {}", i));
    }
  }
}

Dart with_state(const Dart& dart, std::size_t detail, DetailState state) {
  Dart out = dart;
  out.details.at(detail).state = state;
  return out;
}

Dart with_states(const Dart& dart, const std::vector<DetailState>& states) {
  Dart out = dart;
  for (std::size_t i = 0; i < out.details.size() && i < states.size(); ++i) {
    out.details[i].state = states[i];
  }
  return out;
}

std::vector<DetailState> states_of(const Dart& dart) {
  std::vector<DetailState> states;
  states.reserve(dart.details.size());
  for (const Detail& d : dart.details) states.push_back(d.state);
  return states;
}

std::string serialize_dart(const Dart& dart) {
  std::string out = "DART v1\n";
  out += "core: " + text::escape_line(dart.core) + "\n";
  out += "source-hash: " + text::hex64(dart.source_hash()) + "\n";
  out += "source: " + text::escape_line(dart.source) + "\n";
  out += "provenance: " + text::escape_line(dart.provenance) + "\n";
  for (const Detail& d : dart.details) {
    out += fmt::format("detail {}\n", d.index);
    out += "  category=" + text::escape_line(d.category) + "\n";
    out += "  hypernym=" + text::escape_line(d.hypernym) + "\n";
    out += fmt::format("  state={}\n", to_string(d.state));
    out += "  surface=" + text::escape_line(d.surface) + "\n";
    if (d.importance) out += fmt::format("  importance={}\n", *d.importance);
    out += "end\n";
  }
  for (std::size_t e = 0; e < dart.edits.size(); ++e) {
    const Edit& edit = dart.edits[e];
    out += fmt::format("edit {}\n", e);
    out += fmt::format("  detail={}\n", edit.detail);
    out += fmt::format("  role={}\n", to_string(edit.role));
    out += fmt::format("  at={}\n", edit.at);
    out += fmt::format("  length={}\n", edit.length);
    out += "  original=" + text::escape_line(edit.original) + "\n";
    out += "end\n";
  }
  return out;
}

namespace {

class DartReader {
 public:
  explicit DartReader(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        lines_.push_back(text.substr(start));
        break;
      }
      lines_.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_no() const { return pos_ + 1; }

  std::string_view peek() const { return done() ? std::string_view{} : lines_[pos_]; }

  [[noreturn]] void fail(const std::string& what, std::size_t column = 1) const {
    throw MalformedDart(what, line_no(), column);
  }

  std::string_view next() {
    if (done()) fail("unexpected end of input");
    return lines_[pos_++];
  }

  void expect_exact(std::string_view wanted) {
    std::string_view line = peek();
    if (done() || line != wanted) fail(fmt::format("expected '{}'", wanted));
    ++pos_;
  }

  // "<prefix><escaped value>" where prefix includes the separator.
  std::string value(std::string_view prefix) {
    if (done()) fail(fmt::format("expected '{}'", prefix));
    std::string_view line = lines_[pos_];
    if (line.substr(0, prefix.size()) != prefix) {
      fail(fmt::format("expected '{}'", prefix));
    }
    std::string out;
    if (!text::unescape_line(line.substr(prefix.size()), out)) {
      fail("invalid escape sequence", prefix.size() + 1);
    }
    ++pos_;
    return out;
  }

  std::size_t number(std::string_view prefix) {
    std::string raw = value(prefix);
    --pos_;
    std::size_t out = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
    if (ec != std::errc() || ptr != raw.data() + raw.size() || raw.empty()) {
      fail("expected a non-negative integer", prefix.size() + 1);
    }
    ++pos_;
    return out;
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

std::size_t parse_block_index(DartReader& in, std::string_view keyword) {
  std::string_view line = in.peek();
  std::string prefix = std::string(keyword) + " ";
  if (line.substr(0, prefix.size()) != prefix) in.fail(fmt::format("expected '{}<index>'", prefix));
  std::string_view digits = line.substr(prefix.size());
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), out);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    in.fail("expected a non-negative block index", prefix.size() + 1);
  }
  in.next();
  return out;
}

}  // namespace

Dart deserialize_dart(std::string_view text) {
  DartReader in(text);
  Dart dart;
  in.expect_exact("DART v1");
  dart.core = in.value("core: ");
  std::size_t hash_line = in.line_no();
  std::string hash = in.value("source-hash: ");
  dart.source = in.value("source: ");
  dart.provenance = in.value("provenance: ");
  if (hash != text::hex64(dart.source_hash())) {
    throw MalformedDart("source-hash does not match the source text", hash_line, 14);
  }

  while (!in.done() && in.peek().starts_with("detail ")) {
    std::size_t block_line = in.line_no();
    std::size_t index = parse_block_index(in, "detail");
    if (index < dart.details.size()) {
      throw MalformedDart(fmt::format("duplicate detail index {}", index), block_line, 8);
    }
    if (index > dart.details.size()) {
      throw MalformedDart(
          fmt::format("index gap: expected detail {}, found {}", dart.details.size(), index),
          block_line, 8);
    }
    Detail d;
    d.index = index;
    d.category = in.value("  category=");
    d.hypernym = in.value("  hypernym=");
    std::string state = in.value("  state=");
    auto parsed = parse_detail_state(state);
    if (!parsed) throw MalformedDart("unknown state '" + state + "'", in.line_no() - 1, 9);
    d.state = *parsed;
    d.surface = in.value("  surface=");
    if (in.peek().starts_with("  importance=")) {
      std::string raw = in.value("  importance=");
      try {
        std::size_t used = 0;
        d.importance = std::stod(raw, &used);
        if (used != raw.size()) throw std::invalid_argument(raw);
      } catch (const std::exception&) {
        throw MalformedDart("invalid importance value", in.line_no() - 1, 14);
      }
    }
    in.expect_exact("end");
    dart.details.push_back(std::move(d));
  }

  while (!in.done() && in.peek().starts_with("edit ")) {
    std::size_t block_line = in.line_no();
    std::size_t index = parse_block_index(in, "edit");
    if (index != dart.edits.size()) {
      throw MalformedDart(fmt::format("expected edit {}, found {}", dart.edits.size(), index),
                          block_line, 6);
    }
    Edit e;
    e.detail = in.number("  detail=");
    std::string role = in.value("  role=");
    if (role == "slot") {
      e.role = EditRole::Slot;
    } else if (role == "agreement") {
      e.role = EditRole::Agreement;
    } else {
      throw MalformedDart("unknown edit role '" + role + "'", in.line_no() - 1, 8);
    }
    e.at = in.number("  at=");
    e.length = in.number("  length=");
    e.original = in.value("  original=");
    in.expect_exact("end");
    dart.edits.push_back(std::move(e));
  }

  if (!in.done()) in.fail("unexpected content");
  try {
    validate(dart);
  } catch (const InvalidDart& err) {
    throw MalformedDart(err.what(), in.line_no(), 1);
  }
  return dart;
}

nlohmann::json dart_to_json(const Dart& dart) {
  nlohmann::json j;
  j["version"] = 1;
  j["core"] = dart.core;
  j["source-hash"] = text::hex64(dart.source_hash());
  j["source"] = dart.source;
  j["provenance"] = dart.provenance;
  j["details"] = nlohmann::json::array();
  for (const Detail& d : dart.details) {
    nlohmann::json jd = {{"index", d.index},         {"category", d.category},
                         {"hypernym", d.hypernym},   {"state", to_string(d.state)},
                         {"surface", d.surface}};
    if (d.importance) jd["importance"] = *d.importance;
    j["details"].push_back(std::move(jd));
  }
  j["edits"] = nlohmann::json::array();
  for (std::size_t e = 0; e < dart.edits.size(); ++e) {
    const Edit& edit = dart.edits[e];
    j["edits"].push_back({{"index", e},
                          {"detail", edit.detail},
                          {"role", to_string(edit.role)},
                          {"at", edit.at},
                          {"length", edit.length},
                          {"original", edit.original}});
  }
  return j;
}

Dart dart_from_json(const nlohmann::json& j) {
  Dart dart;
  try {
    dart.core = j.at("core").get<std::string>();
    dart.source = j.at("source").get<std::string>();
    dart.provenance = j.at("provenance").get<std::string>();
    for (const auto& jd : j.at("details")) {
      Detail d;
      d.index = jd.at("index").get<std::size_t>();
      d.category = jd.at("category").get<std::string>();
      d.hypernym = jd.at("hypernym").get<std::string>();
      auto state = parse_detail_state(jd.at("state").get<std::string>());
      if (!state) throw InvalidDart("unknown detail state");
      d.state = *state;
      d.surface = jd.at("surface").get<std::string>();
      if (jd.contains("importance")) d.importance = jd["importance"].get<double>();
      dart.details.push_back(std::move(d));
    }
    for (const auto& je : j.at("edits")) {
      Edit e;
      e.detail = je.at("detail").get<std::size_t>();
      e.role = je.at("role").get<std::string>() == "slot" ? EditRole::Slot : EditRole::Agreement;
      e.at = je.at("at").get<std::size_t>();
      e.length = je.at("length").get<std::size_t>();
      e.original = je.at("original").get<std::string>();
      dart.edits.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& err) {
    throw InvalidDart(std::string("malformed dart JSON: ") + err.what());
  }
  if (j.value("source-hash", std::string{}) != text::hex64(dart.source_hash())) {
    throw InvalidDart("source-hash does not match the source text");
  }
  validate(dart);
  return dart;
}

std::uint64_t dart_hash(const Dart& dart) { return text::fnv1a64(serialize_dart(dart)); }

}  // namespace hyperdart
