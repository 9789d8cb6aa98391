// hyperdart: build, compress, score and render darts; run the RAG benchmark
// and the model-pair matrix.
//
// Exit codes: 0 ok, 2 I/O, 3 bad input, 4 scorer or generator failure,
// 5 limit exceeded.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "hyperdart/constrictor.hpp"
#include "hyperdart/dart.hpp"
#include "hyperdart/error.hpp"
#include "hyperdart/gateway.hpp"
#include "hyperdart/importance.hpp"
#include "hyperdart/matrix.hpp"
#include "hyperdart/optimizer.hpp"
#include "hyperdart/rag_bench.hpp"
#include "hyperdart/recomposer.hpp"

#ifndef HYPERDART_DATA_DIR
#define HYPERDART_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace hyperdart;

namespace {

enum Exit { kOk = 0, kIo = 2, kInput = 3, kScorer = 4, kLimit = 5 };

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path.string(), "cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  out << content;
  if (!out) throw IoError(path.string(), "write failed");
}

struct Common {
  std::string lexicon = std::string(HYPERDART_DATA_DIR) + "/lexicon/hypernyms.tsv";
  std::string profiles;
  bool no_absorb = false;
  std::uint64_t seed = 7;
};

struct PolicyFlags {
  double min_fidelity = 0.85;
  double target_ratio = 0.0;
  bool lexical_only = false;
  std::string embed_profile = "mock-embed-a";
  std::string tokenizer = "whitespace";
  std::size_t exact_limit = kDefaultExactLimit;
  std::size_t samples = 128;
};

std::shared_ptr<ModelGateway> make_gateway(const Common& common) {
  auto gateway = std::make_shared<ModelGateway>();
  gateway->add_builtin_mocks();
  if (!common.profiles.empty()) gateway->load_profiles(common.profiles);
  return gateway;
}

std::shared_ptr<const Tokenizer> make_tokenizer(const std::string& spec,
                                                const std::shared_ptr<ModelGateway>& gateway) {
  if (spec == "whitespace") return nullptr;
  if (spec.starts_with("provider:")) return std::make_shared<ProviderTokenizer>(gateway, spec.substr(9));
  throw DegenerateInput("tokenizer must be 'whitespace' or 'provider:<profile>'");
}

CompressionPolicy make_policy(const PolicyFlags& flags, const Common& common,
                              const std::shared_ptr<ModelGateway>& gateway) {
  CompressionPolicy policy;
  policy.min_fidelity = flags.min_fidelity;
  if (flags.target_ratio > 0) policy.target_token_ratio = flags.target_ratio;
  policy.ensemble = flags.lexical_only ? Ensemble{std::make_shared<LexicalScorer>()}
                                       : default_ensemble(gateway, flags.embed_profile);
  policy.tokenizer = make_tokenizer(flags.tokenizer, gateway);
  policy.exact_limit = flags.exact_limit;
  policy.sample_permutations = flags.samples;
  policy.seed = common.seed;
  return policy;
}

void add_policy_flags(CLI::App* cmd, PolicyFlags& flags) {
  cmd->add_option("--min-fidelity", flags.min_fidelity, "Verification floor for every scorer")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--target-ratio", flags.target_ratio, "Stop once tokens fall to this ratio")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_flag("--lexical-only", flags.lexical_only, "Verify with ROUGE-L alone");
  cmd->add_option("--embed-profile", flags.embed_profile, "Embedding profile for verification");
  cmd->add_option("--tokenizer", flags.tokenizer, "whitespace or provider:<profile>");
  cmd->add_option("--exact-limit", flags.exact_limit, "Largest detail count for exact Shapley");
  cmd->add_option("--samples", flags.samples, "Permutations when sampling Shapley values");
}

Dart load_dart(const fs::path& path) {
  std::string content = read_file(path);
  if (path.extension() == ".json") return dart_from_json(nlohmann::json::parse(content));
  return deserialize_dart(content);
}

nlohmann::ordered_json result_json(const CompressionResult& r) {
  nlohmann::ordered_json j;
  j["compressed_text"] = r.compressed_text;
  j["tokenizer"] = r.tokenizer;
  j["tokens_original"] = r.tokens_original;
  j["tokens_compressed"] = r.tokens_compressed;
  j["compression_ratio"] = r.compression_ratio;
  j["compatibility"] = r.compatibility;
  for (const auto& [id, score] : r.fidelity) j["fidelity"][id] = score;
  j["reinstatements"] = r.reinstatements;
  j["trace"] = nlohmann::ordered_json::array();
  for (const Transition& t : r.trace) {
    j["trace"].push_back({{"kind", t.kind == TransitionKind::Demote ? "demote" : "reinstate"},
                          {"detail", t.detail},
                          {"from", to_string(t.from)},
                          {"to", to_string(t.to)},
                          {"tokens", t.tokens},
                          {"compatibility", t.compatibility},
                          {"passed", t.passed}});
  }
  j["dart"] = dart_to_json(r.dart);
  return j;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dart-structured semantic compression toolkit"};
  app.set_config("--config", "", "Key-value configuration file; flags override it");
  app.require_subcommand(1);
  Common common;
  app.add_option("--lexicon", common.lexicon, "Hypernym lexicon (term<TAB>hypernym<TAB>category)");
  app.add_option("--profiles", common.profiles, "Model profile file");
  app.add_flag("--no-absorb", common.no_absorb, "Keep appositive names in the core");
  app.add_option("--seed", common.seed, "Seed for every random choice");

  CLI::App* dart = app.add_subcommand("dart", "Work with individual darts");
  dart->require_subcommand(1);

  // dart build
  CLI::App* build = dart->add_subcommand("build", "Constrict each paragraph of a text file");
  std::string build_input, build_out = ".";
  build->add_option("input", build_input, "UTF-8 text file")->required();
  build->add_option("-o,--out", build_out, "Output directory");

  // dart compress
  CLI::App* comp = dart->add_subcommand("compress", "Compress a dart under a fidelity policy");
  std::string comp_input, comp_out;
  PolicyFlags comp_flags;
  comp->add_option("dart", comp_input, "Dart file (.dart or .dart.json)")->required();
  comp->add_option("-o,--out", comp_out, "Result file (default <dart>.result.json)");
  add_policy_flags(comp, comp_flags);

  // dart shapley
  CLI::App* shap = dart->add_subcommand("shapley", "Per-detail Shapley importance as CSV");
  std::string shap_input, shap_out;
  bool shap_exact = false;
  std::size_t shap_samples = 0;
  std::size_t shap_limit = kDefaultExactLimit;
  shap->add_option("dart", shap_input, "Dart file")->required();
  auto* exact_flag = shap->add_flag("--exact", shap_exact, "Exact enumeration of coalitions");
  shap->add_option("--samples", shap_samples, "Antithetic permutation samples")->excludes(exact_flag);
  shap->add_option("--exact-limit", shap_limit, "Largest detail count for --exact");
  shap->add_option("-o,--out", shap_out, "CSV file (default standard output)");

  // dart render
  CLI::App* rend = dart->add_subcommand("render", "Render or reconstruct a dart");
  std::string rend_input, rend_gran = "FULL", rend_generator = "template", rend_log;
  rend->add_option("dart", rend_input, "Dart file")->required();
  rend->add_option("-g,--granularity", rend_gran, "CORE, SWAPPED, FULL or REGENERATED");
  rend->add_option("--generator", rend_generator, "template or a generate profile id");
  rend->add_option("--log", rend_log, "Append a reconstruction record to this file");

  // bench
  CLI::App* bench = app.add_subcommand("bench", "RAG token-efficiency benchmark");
  std::string bench_corpus, bench_queries, bench_out = "bench-out";
  BenchConfig bench_config;
  PolicyFlags bench_flags;
  bench->add_option("corpus", bench_corpus, "Gutenberg plain-text file")->required();
  bench->add_option("queries", bench_queries, "One query per line")->required();
  bench->add_option("--k", bench_config.k, "Chunks retrieved per query")->check(CLI::PositiveNumber);
  bench->add_option("--threshold", bench_config.threshold, "Compatibility gate");
  bench->add_option("--max-tokens", bench_config.max_tokens, "Chunk size limit")
      ->check(CLI::PositiveNumber);
  bench->add_option("--jobs", bench_config.jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("-o,--out", bench_out, "Report directory");
  add_policy_flags(bench, bench_flags);

  // matrix
  CLI::App* matrix = app.add_subcommand("matrix", "Constrict/reconstruct model-pair sweep");
  std::vector<std::string> matrix_inputs;
  std::string matrix_constrict = "mock-embed-a,mock-embed-b";
  std::string matrix_reconstruct = "mock-gen-a,mock-gen-b";
  std::string matrix_out = "matrix-out";
  PolicyFlags matrix_flags;
  matrix->add_option("inputs", matrix_inputs, "Text files")->required();
  matrix->add_option("--constrict", matrix_constrict, "Comma-separated embed profiles");
  matrix->add_option("--reconstruct", matrix_reconstruct, "Comma-separated generate profiles");
  matrix->add_option("-o,--out", matrix_out, "Output directory");
  add_policy_flags(matrix, matrix_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    ConstrictorOptions options;
    options.absorb_appositives = !common.no_absorb;

    if (*build) {
      HypernymLexicon lexicon = HypernymLexicon::load(common.lexicon);
      std::string content = read_file(build_input);
      std::vector<std::string> paragraphs = split_paragraphs(content);
      if (paragraphs.empty()) throw DegenerateInput(build_input + " has no paragraphs");
      std::string stem = fs::path(build_input).stem().string();
      for (std::size_t i = 0; i < paragraphs.size(); ++i) {
        Dart d = build_dart(paragraphs[i], lexicon, options);
        fs::path base = fs::path(build_out) / fmt::format("{}.{}.dart", stem, i);
        write_file(base, serialize_dart(d));
        write_file(base.string() + ".json", dart_to_json(d).dump(2) + "\n");
        fmt::print("{}\n", base.string());
      }
      return kOk;
    }

    if (*comp) {
      auto gateway = make_gateway(common);
      Dart d = load_dart(comp_input);
      CompressionResult r = compress(d, make_policy(comp_flags, common, gateway));
      fs::path out = comp_out.empty() ? fs::path(comp_input + ".result.json") : fs::path(comp_out);
      write_file(out, result_json(r).dump(2) + "\n");
      write_file(out.string() + ".txt", r.compressed_text + "\n");
      fmt::print("ratio={} compatibility={}\n", r.compression_ratio, r.compatibility);
      return kOk;
    }

    if (*shap) {
      Dart d = load_dart(shap_input);
      LexicalScorer scorer;
      ImportanceVector iv = shap_exact || shap_samples == 0
                                ? shapley_exact(d, scorer, shap_limit)
                                : shapley_sampled(d, scorer, shap_samples, common.seed);
      std::string csv = iv.std_errors ? "index,category,phi,std_error\n" : "index,category,phi\n";
      double sum = 0;
      for (std::size_t i = 0; i < iv.values.size(); ++i) {
        sum += iv.values[i];
        std::string category = d.details[i].category;
        if (category.find_first_of(",\"") != std::string::npos) category = "\"" + category + "\"";
        csv += fmt::format("{},{},{:.12f}", i, category, iv.values[i]);
        if (iv.std_errors) csv += fmt::format(",{:.12f}", (*iv.std_errors)[i]);
        csv += "\n";
      }
      if (shap_out.empty()) {
        fmt::print("{}", csv);
      } else {
        write_file(shap_out, csv);
      }
      fmt::print(stderr, "efficiency: sum={:.12f} v(N)-v(empty)={:.12f}\n", sum,
                 iv.payoff_full - iv.payoff_empty);
      return kOk;
    }

    if (*rend) {
      Dart d = load_dart(rend_input);
      auto g = parse_granularity(rend_gran);
      if (!g) throw DegenerateInput("unknown granularity '" + rend_gran + "'");
      ReconstructionLog log;
      std::string out;
      if (rend_generator == "template") {
        out = reconstruct(d, *g, TemplateGenerator{}, {}, &log);
      } else {
        auto gateway = make_gateway(common);
        GenerationParams params;
        params.seed = common.seed;
        out = reconstruct(d, *g, ModelGenerator(gateway, rend_generator), params, &log);
      }
      fmt::print("{}\n", out);
      if (!rend_log.empty()) {
        std::ofstream f(rend_log, std::ios::binary | std::ios::app);
        if (!f) throw IoError(rend_log, "cannot open log");
        f << log.str();
      }
      return kOk;
    }

    if (*bench) {
      auto gateway = make_gateway(common);
      HypernymLexicon lexicon = HypernymLexicon::load(common.lexicon);
      IngestResult doc = ingest_gutenberg(read_file(bench_corpus));
      if (!doc.markers_found) {
        fmt::print(stderr, "warning: no Gutenberg markers in {}; using the whole file\n", bench_corpus);
      }
      std::vector<std::string> queries = load_queries(bench_queries);
      bench_config.seed = common.seed;
      bench_config.policy = make_policy(bench_flags, common, gateway);
      bench_config.tokenizer = bench_config.policy.tokenizer;
      bench_config.constrictor = options;
      BenchReport report = run_benchmark(doc.text, queries, lexicon, bench_config);
      report.markers_found = doc.markers_found;
      emit_report(report, bench_out);
      double p = report.significance ? report.significance->p_value_one_sided : 0.5;
      fmt::print("queries={} mean_ratio={:.6f} p={:.6g}\n", report.records.size(), report.mean_ratio, p);
      return kOk;
    }

    if (*matrix) {
      auto gateway = make_gateway(common);
      HypernymLexicon lexicon = HypernymLexicon::load(common.lexicon);
      std::vector<std::string> paragraphs;
      for (const auto& input : matrix_inputs) {
        for (auto& p : split_paragraphs(read_file(input))) paragraphs.push_back(std::move(p));
      }
      MatrixConfig config;
      config.constrict_profiles = split_list(matrix_constrict);
      config.reconstruct_profiles = split_list(matrix_reconstruct);
      config.policy = make_policy(matrix_flags, common, gateway);
      config.constrictor = options;
      config.params.seed = common.seed;
      MatrixReport report;
      run_matrix(paragraphs, lexicon, gateway, config, report);
      fs::create_directories(matrix_out);
      write_file(fs::path(matrix_out) / "matrix.csv", matrix_csv(report));
      report.log.write(fs::path(matrix_out) / "reconstruction.log");
      fmt::print("cells={} template_ok={}\n", report.cells.size(), report.all_template_ok() ? "yes" : "no");
      return report.all_template_ok() ? kOk : kInput;
    }
  } catch (const IoError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const fs::filesystem_error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kIo;
  } catch (const TooManyDetails& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kLimit;
  } catch (const ScorerFailure& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kScorer;
  } catch (const GeneratorFailure& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kScorer;
  } catch (const GatewayError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kScorer;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kInput;
  }
  return kOk;
}
