#include "hyperdart/recomposer.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "hyperdart/error.hpp"
#include "hyperdart/text.hpp"

namespace hyperdart {

std::string render(const Dart& dart, Granularity granularity) {
  if (granularity == Granularity::Regenerated) {
    throw Error("REGENERATED output needs a generator; use reconstruct()");
  }
  if (granularity == Granularity::Core) return dart.core;
  std::vector<std::string> items;
  for (const Detail& d : dart.details) {
    if (d.state == DetailState::Dropped) continue;
    if (granularity == Granularity::Full && d.state == DetailState::Inline) {
      items.push_back(d.category + "=" + d.surface);
    } else {
      items.push_back(fmt::format("[{}]={}", d.index, d.category));
    }
  }
  if (items.empty()) return dart.core;
  return fmt::format("{} (Details: {})", dart.core, fmt::join(items, ", "));
}

std::string render_inline(const Dart& dart) { return render_inline(dart, states_of(dart)); }

std::string render_inline(const Dart& dart, const std::vector<DetailState>& states) {
  if (states.size() != dart.details.size()) {
    throw InvalidDart(fmt::format("{} states given for {} details", states.size(), dart.details.size()));
  }
  std::string out;
  std::size_t cursor = 0;
  for (const Edit& e : dart.edits) {
    out.append(dart.core, cursor, e.at - cursor);
    std::string_view core_text = e.core_text(dart.core);
    switch (states[e.detail]) {
      case DetailState::Inline:
        out += e.original;
        break;
      case DetailState::Swapped:
        out += core_text;
        if (e.role == EditRole::Slot) {
          bool spaced = !core_text.empty() || (!e.original.empty() && e.original.front() == ' ');
          out += fmt::format("{}[{}]", spaced ? " " : "", e.detail);
        }
        break;
      case DetailState::Dropped:
        out += core_text;
        break;
    }
    cursor = e.at + e.length;
  }
  out.append(dart.core, cursor, std::string::npos);
  return out;
}

std::string invert(const Dart& dart) { return splice_originals(dart); }

std::string TemplateGenerator::generate(const Dart& dart, Granularity granularity,
                                        const GenerationParams&) const {
  return render(dart, granularity == Granularity::Regenerated ? Granularity::Full : granularity);
}

ModelGenerator::ModelGenerator(std::shared_ptr<ModelGateway> gateway, std::string profile_id)
    : gateway_(std::move(gateway)), profile_id_(std::move(profile_id)) {
  if (gateway_->profile(profile_id_).kind != ProfileKind::Generate) {
    throw Error(fmt::format("profile '{}' is not a generate profile", profile_id_));
  }
}

const std::string& ModelGenerator::instruction() {
  static const std::string text =
      "Rewrite the statement as a fluent paragraph. Each entry in the Details list names a "
      "category and the exact wording it replaced; put that wording back where the general "
      "term stands. Keep entries shown as [k] general.";
  return text;
}

std::string ModelGenerator::generate(const Dart& dart, Granularity granularity,
                                     const GenerationParams& params) const {
  std::string prompt =
      render(dart, granularity == Granularity::Regenerated ? Granularity::Full : granularity);
  try {
    return gateway_->generate(prompt, profile_id_, params, instruction());
  } catch (const GatewayError& err) {
    throw GeneratorFailure(fmt::format("{}: {}", id(), err.what()));
  }
}

std::string ReconstructionRecord::str() const {
  std::string out = "RECON v1\n";
  out += fmt::format("dart-hash: {}\n", text::hex64(dart_hash));
  out += fmt::format("granularity: {}\n", to_string(granularity));
  out += fmt::format("generator: {}\n", text::escape_line(generator));
  out += fmt::format("params: {}\n", params.str());
  out += fmt::format("output-hash: {}\n", text::hex64(output_hash));
  for (const Detail& d : details) {
    out += fmt::format("trace {}\n", d.index);
    out += fmt::format("  hypernym={}\n", text::escape_line(d.hypernym));
    out += fmt::format("  category={}\n", text::escape_line(d.category));
    out += fmt::format("  replaced={}\n", d.index);
    out += fmt::format("  detail={}\n", text::escape_line(d.surface));
    out += fmt::format("  state={}\n", to_string(d.state));
    out += "end\n";
  }
  return out;
}

void ReconstructionLog::append(ReconstructionRecord record) {
  std::lock_guard lock(mutex_);
  records_.push_back(std::move(record));
}

std::vector<ReconstructionRecord> ReconstructionLog::records() const {
  std::lock_guard lock(mutex_);
  return records_;
}

std::string ReconstructionLog::str() const {
  std::lock_guard lock(mutex_);
  std::string out;
  for (const auto& r : records_) out += r.str();
  return out;
}

void ReconstructionLog::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot write reconstruction log");
  out << str();
  if (!out) throw IoError(path.string(), "write failed");
}

std::string reconstruct(const Dart& dart, Granularity granularity, const Generator& generator,
                        const GenerationParams& params, ReconstructionLog* log) {
  std::string output = generator.generate(dart, granularity, params);
  if (log) {
    ReconstructionRecord record;
    record.dart_hash = dart_hash(dart);
    record.granularity = granularity;
    record.generator = generator.id();
    record.params = params;
    record.output_hash = text::fnv1a64(output);
    record.details = dart.details;
    log->append(std::move(record));
  }
  return output;
}

std::size_t RoundtripReport::recovered() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.in_full_render; }));
}

bool RoundtripReport::lossless() const {
  return inverts_exactly && recovered() == entries.size() &&
         std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.stored; });
}

RoundtripReport roundtrip_check(std::string_view original, const Dart& dart) {
  RoundtripReport report;
  std::string full = render(dart, Granularity::Full);
  for (const Detail& d : dart.details) {
    RoundtripEntry entry;
    entry.index = d.index;
    entry.surface = d.surface;
    entry.state = d.state;
    entry.stored = !d.surface.empty() && !verbatim_surface(dart, d.index).empty();
    entry.in_full_render = full.find(d.category + "=" + d.surface) != std::string::npos;
    report.entries.push_back(std::move(entry));
  }
  report.inverts_exactly = invert(dart) == original;
  return report;
}

}  // namespace hyperdart
