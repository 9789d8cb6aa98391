#include "hyperdart/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "hyperdart/error.hpp"
#include "hyperdart/recomposer.hpp"

namespace hyperdart {

Ensemble default_ensemble(std::shared_ptr<ModelGateway> gateway, const std::string& embed_profile) {
  if (!gateway) {
    gateway = std::make_shared<ModelGateway>();
    gateway->add_builtin_mocks();
  }
  return {std::make_shared<LexicalScorer>(),
          std::make_shared<EmbeddingScorer>(std::make_shared<GatewayEmbedder>(gateway, embed_profile))};
}

const Tokenizer& CompressionPolicy::token_counter() const {
  return tokenizer ? *tokenizer : whitespace_tokenizer();
}

void CompressionPolicy::check() const {
  if (ensemble.empty()) throw std::invalid_argument("compression policy needs at least one scorer");
  for (const auto& s : ensemble) {
    if (!s) throw std::invalid_argument("compression policy holds a null scorer");
  }
  if (!(min_fidelity >= 0.0 && min_fidelity <= 1.0)) {
    throw std::invalid_argument("min_fidelity must lie in [0, 1]");
  }
  if (target_token_ratio && !(*target_token_ratio > 0.0 && *target_token_ratio <= 1.0)) {
    throw std::invalid_argument("target token ratio must lie in (0, 1]");
  }
  if (sample_permutations == 0) throw std::invalid_argument("sample_permutations must be positive");
}

VerificationReport verify(std::string_view compressed_text, std::string_view original,
                          const CompressionPolicy& policy) {
  if (policy.ensemble.empty()) throw std::invalid_argument("verification needs at least one scorer");
  VerificationReport report;
  report.compatibility = std::numeric_limits<double>::infinity();
  for (const auto& scorer : policy.ensemble) {
    double s = scorer->score(compressed_text, original);
    report.scores.emplace_back(scorer->id(), s);
    if (s < policy.min_fidelity) report.failing.push_back(scorer->id());
    report.compatibility = std::min(report.compatibility, s);
  }
  report.pass = report.failing.empty();
  return report;
}

namespace {

DetailState demoted(DetailState s) {
  return s == DetailState::Inline ? DetailState::Swapped : DetailState::Dropped;
}

// phi per detail index; details outside `players` keep +inf.
std::vector<double> importance_of(const Dart& dart, const std::vector<std::size_t>& players,
                                  const CompressionPolicy& policy) {
  std::vector<double> phi(dart.size(), std::numeric_limits<double>::infinity());
  if (players.empty()) return phi;
  CoalitionGame game(dart, *policy.ensemble.front(), players);
  ImportanceVector iv = players.size() <= policy.exact_limit
                            ? shapley_exact(game, policy.exact_limit)
                            : shapley_sampled(game, policy.sample_permutations, policy.seed);
  for (std::size_t k = 0; k < players.size(); ++k) phi[players[k]] = iv.values[k];
  return phi;
}

}  // namespace

CompressionResult compress(const Dart& dart, const CompressionPolicy& policy) {
  policy.check();
  validate(dart);
  for (const Detail& d : dart.details) {
    if (d.state != DetailState::Inline) {
      throw InvalidDart(fmt::format("detail {} is {}; compression starts from INLINE", d.index,
                                    to_string(d.state)));
    }
  }
  const Tokenizer& tok = policy.token_counter();
  const std::size_t n = dart.size();
  CompressionResult result;
  result.tokenizer = tok.id();
  result.tokens_original = tok.count(dart.source);
  if (result.tokens_original == 0) throw EmptyOriginal();

  Dart current = dart;
  std::size_t tokens_now = tok.count(render_inline(current));
  std::vector<bool> eligible(n, true);
  const std::size_t max_reinstatements = policy.max_reinstatements.value_or(2 * n);

  auto free_players = [&]() {
    std::vector<std::size_t> players;
    for (std::size_t i = 0; i < n; ++i) {
      if (eligible[i]) players.push_back(i);
    }
    return players;
  };
  auto target_reached = [&]() {
    return policy.target_token_ratio &&
           static_cast<double>(tokens_now) <=
               *policy.target_token_ratio * static_cast<double>(result.tokens_original);
  };

  std::vector<double> phi;
  bool phi_stale = true;
  double compat_now = std::numeric_limits<double>::quiet_NaN();
  while (!target_reached()) {
    if (phi_stale) {
      phi = importance_of(current, free_players(), policy);
      phi_stale = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (std::isfinite(phi[i])) current.details[i].importance = phi[i];
      }
    }
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
      if (eligible[i] && current.details[i].state != DetailState::Dropped) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return phi[a] < phi[b]; });

    std::optional<std::size_t> pick;
    Dart next;
    std::string next_text;
    std::size_t next_tokens = 0;
    for (std::size_t i : order) {
      next = with_state(current, i, demoted(current.details[i].state));
      next_text = render_inline(next);
      next_tokens = tok.count(next_text);
      if (next_tokens > tokens_now) {
        eligible[i] = false;
        continue;
      }
      pick = i;
      break;
    }
    if (!pick) break;

    const DetailState from = current.details[*pick].state;
    const DetailState to = next.details[*pick].state;
    VerificationReport report = verify(next_text, dart.source, policy);
    result.trace.push_back({TransitionKind::Demote, *pick, from, to, next_tokens,
                            report.compatibility, report.pass});
    if (report.pass) {
      current = std::move(next);
      tokens_now = next_tokens;
      compat_now = report.compatibility;
      continue;
    }
    // Failed step: put the detail back one state and stop demoting it.
    if (std::isnan(compat_now)) compat_now = verify(render_inline(current), dart.source, policy).compatibility;
    result.trace.push_back({TransitionKind::Reinstate, *pick, to, from, tokens_now, compat_now, true});
    eligible[*pick] = false;
    ++result.reinstatements;
    if (result.reinstatements >= max_reinstatements) break;
    phi_stale = true;
  }

  result.dart = current;
  result.compressed_text = render_inline(current);
  result.tokens_compressed = tokens_now;
  result.compression_ratio =
      static_cast<double>(tokens_now) / static_cast<double>(result.tokens_original);
  VerificationReport final_report = verify(result.compressed_text, dart.source, policy);
  result.fidelity = final_report.scores;
  result.compatibility = final_report.compatibility;
  return result;
}

Dart replay(const Dart& initial, const std::vector<Transition>& trace) {
  Dart out = initial;
  for (const Transition& t : trace) {
    if (out.details.at(t.detail).state != t.from) {
      throw InvalidDart(fmt::format("trace expects detail {} in state {}", t.detail, to_string(t.from)));
    }
    out.details[t.detail].state = t.to;
  }
  return out;
}

}  // namespace hyperdart
