#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "hyperdart/gateway.hpp"
#include "hyperdart/lexicon.hpp"
#include "hyperdart/optimizer.hpp"
#include "hyperdart/scoring.hpp"

namespace test {

inline std::filesystem::path data_dir() { return HYPERDART_DATA_DIR; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline const std::string kRex =
    "The German shepherd named Rex barked loudly at the mail carrier at 7:00 AM.";
inline const std::string kScheduling =
    "Let's schedule the meeting downtown at 7:00 or 10:00am depending on the weather.";

// The lexicon the worked examples are written against. Goldens use it so
// they do not move when the bundled lexicon grows.
inline hyperdart::HypernymLexicon minimal_lexicon() {
  return hyperdart::HypernymLexicon::from_string("German Shepherd\tdog\tbreed\n", "minimal");
}

inline hyperdart::HypernymLexicon bundled_lexicon() {
  return hyperdart::HypernymLexicon::load(data_dir() / "lexicon" / "hypernyms.tsv");
}

inline std::shared_ptr<hyperdart::ModelGateway> mock_gateway() {
  auto gateway = std::make_shared<hyperdart::ModelGateway>();
  gateway->add_builtin_mocks();
  return gateway;
}

inline std::shared_ptr<const hyperdart::FidelityScorer> lexical() {
  return std::make_shared<hyperdart::LexicalScorer>();
}

inline hyperdart::CompressionPolicy lexical_policy(double floor = 0.85) {
  hyperdart::CompressionPolicy policy;
  policy.min_fidelity = floor;
  policy.ensemble = {lexical()};
  return policy;
}

inline hyperdart::CompressionPolicy default_policy() {
  hyperdart::CompressionPolicy policy;
  policy.ensemble = hyperdart::default_ensemble(mock_gateway());
  return policy;
}

}  // namespace test
