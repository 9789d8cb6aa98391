#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/gateway.hpp"
#include "hyperdart/lexicon.hpp"
#include "hyperdart/optimizer.hpp"
#include "hyperdart/recomposer.hpp"

namespace hyperdart {

struct MatrixCell {
  std::string constrict_profile;     // embed profile used for verification
  std::string reconstruct_profile;   // generate profile
  std::size_t darts = 0;
  double mean_ratio = 1.0;
  double mean_compatibility = 1.0;
  std::size_t template_matches = 0;  // template FULL output == render(FULL)
  std::size_t surfaces_in_output = 0;
  std::size_t surfaces_total = 0;
  std::size_t failures = 0;

  bool template_ok() const { return template_matches == darts && failures == 0; }
};

struct MatrixReport {
  std::vector<MatrixCell> cells;
  ReconstructionLog log;

  bool all_template_ok() const;
};

struct MatrixConfig {
  std::vector<std::string> constrict_profiles;
  std::vector<std::string> reconstruct_profiles;
  CompressionPolicy policy;  // the ensemble is replaced per cell
  ConstrictorOptions constrictor;
  GenerationParams params;
};

// Every (constrict, reconstruct) pair: each paragraph is constricted and
// compressed with lexical + embedding verification under the constrict
// profile, then reconstructed at FULL by the template generator and by the
// reconstruct profile. Both reconstructions are logged.
void run_matrix(const std::vector<std::string>& paragraphs, const HypernymLexicon& lexicon,
                const std::shared_ptr<ModelGateway>& gateway, const MatrixConfig& config,
                MatrixReport& report);

std::string matrix_csv(const MatrixReport& report);

}  // namespace hyperdart
