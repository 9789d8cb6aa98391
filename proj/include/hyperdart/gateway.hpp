#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "hyperdart/error.hpp"
#include "hyperdart/metrics.hpp"

namespace hyperdart {

enum class ProfileKind { Embed, Generate };
enum class Backend { Mock, OpenAI };

std::string_view to_string(ProfileKind kind);

struct ModelProfile {
  std::string id;
  ProfileKind kind = ProfileKind::Embed;
  Backend backend = Backend::Mock;
  // OpenAI-compatible endpoint; empty fields fall back to HYPERDART_BASE_URL,
  // HYPERDART_MODEL and HYPERDART_API_KEY.
  std::string base_url;
  std::string model;
  std::string api_key_env = "HYPERDART_API_KEY";
  // Mock settings.
  std::uint64_t seed = 0;
  std::size_t dimension = 64;
  // "{profile}" and "{prompt}" are substituted.
  std::string envelope = "[{profile}]\n{prompt}\n[/{profile}]";
};

struct GenerationParams {
  std::size_t max_tokens = 512;
  double temperature = 0.0;
  std::uint64_t seed = 0;

  std::string str() const;
};

enum class GatewayErrorKind { Timeout, HttpStatus, MalformedResponse, ContentFiltered, Network };

std::string_view to_string(GatewayErrorKind kind);

class GatewayError : public Error {
 public:
  GatewayError(GatewayErrorKind kind, const std::string& what, int status = 0);

  GatewayErrorKind kind() const { return kind_; }
  int status() const { return status_; }
  // Timeouts, network failures, 408, 429 and 5xx are worth another attempt.
  bool retryable() const;

 private:
  GatewayErrorKind kind_;
  int status_;
};

struct HttpResponse {
  int status = 0;
  std::string body;
};

// One POST of a JSON body. Throws GatewayError (Timeout or Network) when no
// response arrives.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse post(const std::string& base_url, const std::string& path,
                            const std::string& body,
                            const std::vector<std::pair<std::string, std::string>>& headers,
                            std::chrono::milliseconds timeout) = 0;
};

class HttplibTransport final : public Transport {
 public:
  HttpResponse post(const std::string& base_url, const std::string& path, const std::string& body,
                    const std::vector<std::pair<std::string, std::string>>& headers,
                    std::chrono::milliseconds timeout) override;
};

struct GatewayConfig {
  std::size_t max_attempts = 3;
  std::chrono::milliseconds initial_backoff{250};
  std::chrono::milliseconds request_timeout{30000};
  std::chrono::milliseconds total_budget{120000};
  std::size_t max_in_flight = 4;
};

struct CallTrace {
  std::string profile;
  std::string operation;
  std::size_t attempts = 0;
  bool ok = false;
  std::vector<std::string> errors;
};

// Mock embedding of `text`: for each dimension j,
//   v_j = sum over distinct tokens t of count(t) * u(t, j)
//   u(t, j) = 2 * (splitmix64(fnv1a64(t) ^ splitmix64(seed * 1024 + j)) >> 11) / 2^53 - 1
// with tokens from the whitespace tokenizer.
std::vector<double> mock_embedding(std::string_view text, std::uint64_t seed, std::size_t dimension);
std::uint64_t splitmix64(std::uint64_t x);

class ModelGateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit ModelGateway(GatewayConfig config = {}, std::shared_ptr<Transport> transport = nullptr,
                        Sleeper sleeper = nullptr);

  ModelGateway(const ModelGateway&) = delete;
  ModelGateway& operator=(const ModelGateway&) = delete;

  // mock-embed-a, mock-embed-b, mock-gen-a, mock-gen-b.
  void add_builtin_mocks();

  void add_profile(ModelProfile profile);
  // INI-style file: `[profile <id>]` sections with `key = value` lines;
  // `[gateway]` sets retry and timeout knobs. Throws IoError or Error.
  void load_profiles(const std::filesystem::path& path);
  const ModelProfile& profile(const std::string& id) const;
  std::vector<std::string> profile_ids(std::optional<ProfileKind> kind = std::nullopt) const;
  const GatewayConfig& config() const { return config_; }

  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts,
                                         const std::string& profile_id);
  std::string generate(const std::string& prompt, const std::string& profile_id,
                       const GenerationParams& params, const std::string& system = {});
  // Provider token count; mocks count ceil(bytes / 4).
  std::size_t count_tokens(std::string_view text, const std::string& profile_id) const;

  std::vector<CallTrace> traces() const;

 private:
  HttpResponse call(const ModelProfile& profile, const std::string& operation,
                    const std::string& path, const std::string& body,
                    const std::function<void(const HttpResponse&)>& check);

  GatewayConfig config_;
  std::shared_ptr<Transport> transport_;
  Sleeper sleeper_;
  std::map<std::string, ModelProfile> profiles_;
  std::unique_ptr<std::counting_semaphore<>> slots_;
  mutable std::mutex mutex_;
  std::vector<CallTrace> traces_;
};

class GatewayEmbedder final : public Embedder {
 public:
  GatewayEmbedder(std::shared_ptr<ModelGateway> gateway, std::string profile_id);
  std::string id() const override { return profile_id_; }
  std::vector<std::vector<double>> embed(const std::vector<std::string>& texts) const override;

 private:
  std::shared_ptr<ModelGateway> gateway_;
  std::string profile_id_;
};

// Token counts from a provider profile; tokenize() yields 4-byte pieces for
// mocks so that count() agrees with tokenize().size().
class ProviderTokenizer final : public Tokenizer {
 public:
  ProviderTokenizer(std::shared_ptr<ModelGateway> gateway, std::string profile_id);
  std::string id() const override { return "provider/" + profile_id_; }
  std::vector<std::string> tokenize(std::string_view text) const override;
  std::size_t count(std::string_view text) const override;

 private:
  std::shared_ptr<ModelGateway> gateway_;
  std::string profile_id_;
};

}  // namespace hyperdart
