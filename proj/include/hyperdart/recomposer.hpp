#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdart/dart.hpp"
#include "hyperdart/gateway.hpp"

namespace hyperdart {

// Structured text: the core followed by a parenthesised tail.
//   CORE     core only
//   SWAPPED  core + "(Details: [k]=category, ...)" for details not DROPPED
//   FULL     core + "(Details: category=surface, ...)"; SWAPPED details show
//            their indicator, DROPPED ones are omitted
// An empty tail is elided. Throws Error for REGENERATED.
std::string render(const Dart& dart, Granularity granularity);

// Running text with each detail expressed in place according to its state:
// INLINE restores the original wording, SWAPPED keeps the hypernym and
// appends the indicator "[k]", DROPPED keeps the hypernym alone. With every
// detail INLINE this is the source; with every detail DROPPED it is the core.
std::string render_inline(const Dart& dart);
std::string render_inline(const Dart& dart, const std::vector<DetailState>& states);

// The source text rebuilt from the core and the stored originals.
std::string invert(const Dart& dart);

class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string id() const = 0;
  virtual std::string generate(const Dart& dart, Granularity granularity,
                               const GenerationParams& params) const = 0;
};

// render() at the requested level; REGENERATED maps to FULL.
class TemplateGenerator final : public Generator {
 public:
  std::string id() const override { return "template"; }
  std::string generate(const Dart& dart, Granularity granularity,
                       const GenerationParams& params) const override;
};

// Sends the FULL (or requested) rendering to a generate profile and returns
// the model's prose. Gateway errors surface as GeneratorFailure.
class ModelGenerator final : public Generator {
 public:
  ModelGenerator(std::shared_ptr<ModelGateway> gateway, std::string profile_id);
  std::string id() const override { return "model/" + profile_id_; }
  std::string generate(const Dart& dart, Granularity granularity,
                       const GenerationParams& params) const override;

  static const std::string& instruction();

 private:
  std::shared_ptr<ModelGateway> gateway_;
  std::string profile_id_;
};

struct ReconstructionRecord {
  std::uint64_t dart_hash = 0;
  Granularity granularity = Granularity::Full;
  std::string generator;
  GenerationParams params;
  std::uint64_t output_hash = 0;
  // One trace block per detail: hypernym, category, indicator, surface.
  std::vector<Detail> details;

  std::string str() const;
};

// Append-only, thread-safe collection of reconstruction records.
class ReconstructionLog {
 public:
  void append(ReconstructionRecord record);
  std::vector<ReconstructionRecord> records() const;
  std::string str() const;
  // Throws IoError.
  void write(const std::filesystem::path& path) const;

 private:
  mutable std::mutex mutex_;
  std::vector<ReconstructionRecord> records_;
};

std::string reconstruct(const Dart& dart, Granularity granularity, const Generator& generator,
                        const GenerationParams& params = {}, ReconstructionLog* log = nullptr);

struct RoundtripEntry {
  std::size_t index = 0;
  std::string surface;
  DetailState state = DetailState::Inline;
  bool stored = false;         // surface and original wording kept in the dart
  bool in_full_render = false; // surface appears byte-exact in render(FULL)
};

struct RoundtripReport {
  std::vector<RoundtripEntry> entries;
  bool inverts_exactly = false;

  std::size_t recovered() const;
  bool lossless() const;
};

RoundtripReport roundtrip_check(std::string_view original, const Dart& dart);

}  // namespace hyperdart
