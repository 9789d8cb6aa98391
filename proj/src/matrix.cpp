#include "hyperdart/matrix.hpp"

#include <algorithm>
#include <optional>

#include <fmt/format.h>

namespace hyperdart {

bool MatrixReport::all_template_ok() const {
  return !cells.empty() &&
         std::all_of(cells.begin(), cells.end(), [](const MatrixCell& c) { return c.template_ok(); });
}

void run_matrix(const std::vector<std::string>& paragraphs, const HypernymLexicon& lexicon,
                const std::shared_ptr<ModelGateway>& gateway, const MatrixConfig& config,
                MatrixReport& report) {
  const TemplateGenerator templ;
  for (const std::string& embed_id : config.constrict_profiles) {
    CompressionPolicy policy = config.policy;
    policy.ensemble = default_ensemble(gateway, embed_id);
    for (const std::string& gen_id : config.reconstruct_profiles) {
      MatrixCell cell;
      cell.constrict_profile = embed_id;
      cell.reconstruct_profile = gen_id;
      std::optional<ModelGenerator> model;
      try {
        model.emplace(gateway, gen_id);
      } catch (const std::exception&) {
        cell.darts = cell.failures = paragraphs.size();
        report.cells.push_back(cell);
        continue;
      }
      double ratio_sum = 0, compat_sum = 0;
      for (const std::string& paragraph : paragraphs) {
        ++cell.darts;
        try {
          CompressionResult result = compress(build_dart(paragraph, lexicon, config.constrictor), policy);
          ratio_sum += result.compression_ratio;
          compat_sum += result.compatibility;
          // Reconstruction starts from the full tail so every surface can
          // be recovered.
          Dart full = result.dart;
          for (Detail& d : full.details) d.state = DetailState::Inline;
          std::string t = reconstruct(full, Granularity::Full, templ, config.params, &report.log);
          if (t == render(full, Granularity::Full)) ++cell.template_matches;
          std::string m = reconstruct(full, Granularity::Regenerated, *model, config.params, &report.log);
          for (const Detail& d : full.details) {
            ++cell.surfaces_total;
            if (m.find(d.surface) != std::string::npos) ++cell.surfaces_in_output;
          }
        } catch (const std::exception&) {
          ++cell.failures;
        }
      }
      if (cell.darts > 0) {
        cell.mean_ratio = ratio_sum / static_cast<double>(cell.darts);
        cell.mean_compatibility = compat_sum / static_cast<double>(cell.darts);
      }
      report.cells.push_back(cell);
    }
  }
}

std::string matrix_csv(const MatrixReport& report) {
  std::string out =
      "constrict_profile,reconstruct_profile,darts,mean_ratio,mean_compatibility,template_matches,"
      "surfaces_in_output,surfaces_total,failures\n";
  for (const auto& c : report.cells) {
    out += fmt::format("{},{},{},{:.6f},{:.6f},{},{},{},{}\n", c.constrict_profile,
                       c.reconstruct_profile, c.darts, c.mean_ratio, c.mean_compatibility,
                       c.template_matches, c.surfaces_in_output, c.surfaces_total, c.failures);
  }
  return out;
}

}  // namespace hyperdart
