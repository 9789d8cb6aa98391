#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace hyperdart {

// Per-detail compression state. The optimizer moves a detail one step at a
// time along Inline <-> Swapped <-> Dropped; details are never removed.
enum class DetailState { Inline, Swapped, Dropped };

std::string_view to_string(DetailState state);
std::optional<DetailState> parse_detail_state(std::string_view name);

// Reconstruction fidelity levels, ordered Core < Swapped < Full.
// Regenerated is produced by a generator rather than by rendering.
enum class Granularity { Core, Swapped, Full, Regenerated };

std::string_view to_string(Granularity granularity);
std::optional<Granularity> parse_granularity(std::string_view name);

struct Detail {
  std::size_t index = 0;
  std::string category;  // free-form label, e.g. "time choice"
  std::string hypernym;  // generalised replacement used in the core
  std::string surface;   // the specific wording the core no longer carries
  DetailState state = DetailState::Inline;
  std::optional<double> importance;

  bool operator==(const Detail&) const = default;
};

enum class EditRole {
  Slot,       // the detail's own replacement in the core
  Agreement,  // article rewrite made on behalf of the detail
};

std::string_view to_string(EditRole role);

// One replacement performed while building the core: core[at, at+length)
// stands in for `original`. Splicing every original back inverts the core.
struct Edit {
  std::size_t detail = 0;
  EditRole role = EditRole::Slot;
  std::size_t at = 0;
  std::size_t length = 0;
  std::string original;

  std::string_view core_text(std::string_view core) const {
    return core.substr(at, length);
  }

  bool operator==(const Edit&) const = default;
};

// A generalised core statement plus an ordered tail of indexed details.
// Treated as an immutable value: the helpers below return modified copies.
struct Dart {
  std::string core;
  std::vector<Detail> details;
  std::vector<Edit> edits;  // sorted by `at`, non-overlapping
  std::string source;
  std::string provenance;

  bool operator==(const Dart&) const = default;

  std::size_t size() const { return details.size(); }
  std::uint64_t source_hash() const;
  // Index of the detail's slot edit.
  std::size_t slot_of(std::size_t detail) const;
};

// Throws InvalidDart describing the first violated invariant.
void validate(const Dart& dart);

Dart with_state(const Dart& dart, std::size_t detail, DetailState state);
Dart with_states(const Dart& dart, const std::vector<DetailState>& states);
std::vector<DetailState> states_of(const Dart& dart);

// The verbatim source wording of a detail (surface spellings may differ from
// the source in ASCII case when the lexicon supplies a canonical form).
std::string_view verbatim_surface(const Dart& dart, std::size_t detail);

// Canonical line-oriented serialization (golden-test form).
std::string serialize_dart(const Dart& dart);
// Throws MalformedDart with the offending line and column.
Dart deserialize_dart(std::string_view text);

// Interchange mirror with the same field names.
nlohmann::json dart_to_json(const Dart& dart);
Dart dart_from_json(const nlohmann::json& json);

// Splices every edit's original text back into the core, ignoring detail
// states. Equals `source` for every valid dart.
std::string splice_originals(const Dart& dart);

// Hash of the canonical serialization; identifies a dart in logs.
std::uint64_t dart_hash(const Dart& dart);

}  // namespace hyperdart
