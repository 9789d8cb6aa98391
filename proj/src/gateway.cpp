#include "hyperdart/gateway.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>

#include "hyperdart/text.hpp"

namespace hyperdart {

using nlohmann::json;

std::string_view to_string(ProfileKind kind) {
  return kind == ProfileKind::Embed ? "embed" : "generate";
}

std::string_view to_string(GatewayErrorKind kind) {
  switch (kind) {
    case GatewayErrorKind::Timeout: return "timeout";
    case GatewayErrorKind::HttpStatus: return "http-status";
    case GatewayErrorKind::MalformedResponse: return "malformed-response";
    case GatewayErrorKind::ContentFiltered: return "content-filtered";
    case GatewayErrorKind::Network: return "network";
  }
  return "network";
}

std::string GenerationParams::str() const {
  return fmt::format("max_tokens={} temperature={} seed={}", max_tokens, temperature, seed);
}

GatewayError::GatewayError(GatewayErrorKind kind, const std::string& what, int status)
    : Error(fmt::format("{}: {}", to_string(kind), what)), kind_(kind), status_(status) {}

bool GatewayError::retryable() const {
  switch (kind_) {
    case GatewayErrorKind::Timeout:
    case GatewayErrorKind::Network: return true;
    case GatewayErrorKind::HttpStatus: return status_ == 408 || status_ == 429 || status_ >= 500;
    default: return false;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<double> mock_embedding(std::string_view text, std::uint64_t seed, std::size_t dimension) {
  std::map<std::string, std::size_t> counts;
  for (std::string& token : whitespace_tokenizer().tokenize(text)) ++counts[token];
  std::vector<double> v(dimension, 0.0);
  for (const auto& [token, count] : counts) {
    std::uint64_t h = text::fnv1a64(token);
    for (std::size_t j = 0; j < dimension; ++j) {
      std::uint64_t x = splitmix64(h ^ splitmix64(seed * 1024 + j));
      double u = 2.0 * static_cast<double>(x >> 11) / 9007199254740992.0 - 1.0;
      v[j] += static_cast<double>(count) * u;
    }
  }
  return v;
}

namespace {

std::string substitute(std::string s, std::string_view key, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = s.find(key, pos)) != std::string::npos) {
    s.replace(pos, key.size(), value);
    pos += value.size();
  }
  return s;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value && *value ? std::string(value) : fallback;
}

// Splits "https://host:port/prefix" into ("https://host:port", "/prefix").
std::pair<std::string, std::string> split_base_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  std::size_t path = url.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (path == std::string::npos) return {url, ""};
  std::string prefix = url.substr(path);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {url.substr(0, path), prefix};
}

}  // namespace

HttpResponse HttplibTransport::post(const std::string& base_url, const std::string& path,
                                    const std::string& body,
                                    const std::vector<std::pair<std::string, std::string>>& headers,
                                    std::chrono::milliseconds timeout) {
  auto [host, prefix] = split_base_url(base_url);
  httplib::Client client(host);
  auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  auto micros = std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());
  httplib::Headers hdrs;
  for (const auto& [k, v] : headers) hdrs.emplace(k, v);
  auto result = client.Post(prefix + path, hdrs, body, "application/json");
  if (!result) {
    auto err = result.error();
    std::string what = httplib::to_string(err);
    if (err == httplib::Error::Read || err == httplib::Error::Write ||
        err == httplib::Error::ConnectionTimeout) {
      throw GatewayError(GatewayErrorKind::Timeout, what);
    }
    throw GatewayError(GatewayErrorKind::Network, what);
  }
  return {result->status, result->body};
}

ModelGateway::ModelGateway(GatewayConfig config, std::shared_ptr<Transport> transport,
                           Sleeper sleeper)
    : config_(config),
      transport_(transport ? std::move(transport) : std::make_shared<HttplibTransport>()),
      sleeper_(sleeper ? std::move(sleeper)
                       : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }),
      slots_(std::make_unique<std::counting_semaphore<>>(
          static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config.max_in_flight)))) {}

void ModelGateway::add_builtin_mocks() {
  auto mock = [](std::string id, ProfileKind kind, std::uint64_t seed) {
    ModelProfile p;
    p.id = std::move(id);
    p.kind = kind;
    p.seed = seed;
    return p;
  };
  ModelProfile gen_b = mock("mock-gen-b", ProfileKind::Generate, 2);
  gen_b.envelope = "<reconstruction model=\"{profile}\">\n{prompt}\n</reconstruction>";
  add_profile(mock("mock-embed-a", ProfileKind::Embed, 1));
  add_profile(mock("mock-embed-b", ProfileKind::Embed, 2));
  add_profile(mock("mock-gen-a", ProfileKind::Generate, 1));
  add_profile(std::move(gen_b));
}

void ModelGateway::add_profile(ModelProfile profile) {
  if (profile.id.empty()) throw Error("model profile id is empty");
  std::lock_guard lock(mutex_);
  if (profiles_.count(profile.id)) throw Error(fmt::format("duplicate model profile '{}'", profile.id));
  std::string id = profile.id;
  profiles_.emplace(std::move(id), std::move(profile));
}

void ModelGateway::load_profiles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open profile file");
  std::string line;
  std::size_t line_no = 0;
  std::optional<ModelProfile> current;
  bool in_gateway = false;
  auto fail = [&](const std::string& what) {
    throw Error(fmt::format("{}:{}: {}", path.string(), line_no, what));
  };
  auto flush = [&]() {
    if (current) add_profile(std::move(*current));
    current.reset();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view l = text::trim(line);
    if (l.empty() || l.front() == '#' || l.front() == ';') continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail("unterminated section header");
      std::string_view name = text::trim(l.substr(1, l.size() - 2));
      flush();
      in_gateway = name == "gateway";
      if (!in_gateway) {
        if (!name.starts_with("profile ")) fail("expected [gateway] or [profile <id>]");
        current = ModelProfile{};
        current->id = std::string(text::trim(name.substr(8)));
      }
      continue;
    }
    std::size_t eq = l.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string key(text::trim(l.substr(0, eq)));
    std::string value(text::trim(l.substr(eq + 1)));
    try {
      if (in_gateway) {
        if (key == "max_attempts") config_.max_attempts = std::stoul(value);
        else if (key == "initial_backoff_ms") config_.initial_backoff = std::chrono::milliseconds(std::stol(value));
        else if (key == "request_timeout_ms") config_.request_timeout = std::chrono::milliseconds(std::stol(value));
        else if (key == "total_budget_ms") config_.total_budget = std::chrono::milliseconds(std::stol(value));
        else if (key == "max_in_flight") {
          config_.max_in_flight = std::stoul(value);
          slots_ = std::make_unique<std::counting_semaphore<>>(
              static_cast<std::ptrdiff_t>(std::max<std::size_t>(1, config_.max_in_flight)));
        } else fail("unknown gateway key '" + key + "'");
        continue;
      }
      if (!current) fail("key outside a section");
      if (key == "kind") {
        if (value == "embed") current->kind = ProfileKind::Embed;
        else if (value == "generate") current->kind = ProfileKind::Generate;
        else fail("kind must be embed or generate");
      } else if (key == "backend") {
        if (value == "mock") current->backend = Backend::Mock;
        else if (value == "openai") current->backend = Backend::OpenAI;
        else fail("backend must be mock or openai");
      } else if (key == "base_url") current->base_url = value;
      else if (key == "model") current->model = value;
      else if (key == "api_key_env") current->api_key_env = value;
      else if (key == "seed") current->seed = std::stoull(value);
      else if (key == "dimension") current->dimension = std::stoul(value);
      else if (key == "envelope") {
        std::string raw;
        if (!text::unescape_line(value, raw)) fail("bad escape in envelope");
        current->envelope = raw;
      } else fail("unknown profile key '" + key + "'");
    } catch (const std::logic_error&) {
      fail("invalid value for '" + key + "'");
    }
  }
  flush();
}

const ModelProfile& ModelGateway::profile(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = profiles_.find(id);
  if (it == profiles_.end()) throw Error(fmt::format("unknown model profile '{}'", id));
  return it->second;
}

std::vector<std::string> ModelGateway::profile_ids(std::optional<ProfileKind> kind) const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, p] : profiles_) {
    if (!kind || p.kind == *kind) out.push_back(id);
  }
  return out;
}

std::vector<CallTrace> ModelGateway::traces() const {
  std::lock_guard lock(mutex_);
  return traces_;
}

HttpResponse ModelGateway::call(const ModelProfile& profile, const std::string& operation,
                                const std::string& path, const std::string& body,
                                const std::function<void(const HttpResponse&)>& check) {
  slots_->acquire();
  struct Release {
    std::counting_semaphore<>* s;
    ~Release() { s->release(); }
  } release{slots_.get()};

  std::string base = profile.base_url.empty() ? env_or("HYPERDART_BASE_URL", "") : profile.base_url;
  if (base.empty()) throw GatewayError(GatewayErrorKind::Network, "no base URL for profile " + profile.id);
  std::vector<std::pair<std::string, std::string>> headers;
  std::string key = env_or(profile.api_key_env.c_str(), "");
  if (!key.empty()) headers.emplace_back("Authorization", "Bearer " + key);

  CallTrace trace{profile.id, operation, 0, false, {}};
  auto record = [&]() {
    std::lock_guard lock(mutex_);
    traces_.push_back(trace);
  };
  const auto start = std::chrono::steady_clock::now();
  auto backoff = config_.initial_backoff;
  const std::size_t attempts = std::max<std::size_t>(1, config_.max_attempts);
  for (std::size_t attempt = 1;; ++attempt) {
    trace.attempts = attempt;
    try {
      HttpResponse response = transport_->post(base, path, body, headers, config_.request_timeout);
      if (response.status != 200) {
        throw GatewayError(GatewayErrorKind::HttpStatus,
                           fmt::format("HTTP {} from {}", response.status, path), response.status);
      }
      check(response);
      trace.ok = true;
      record();
      return response;
    } catch (const GatewayError& err) {
      trace.errors.emplace_back(err.what());
      auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start);
      if (!err.retryable() || attempt >= attempts || elapsed + backoff > config_.total_budget) {
        record();
        throw;
      }
    }
    sleeper_(backoff);
    backoff *= 2;
  }
}

std::vector<std::vector<double>> ModelGateway::embed(const std::vector<std::string>& texts,
                                                     const std::string& profile_id) {
  const ModelProfile p = profile(profile_id);
  if (p.kind != ProfileKind::Embed) throw Error(fmt::format("profile '{}' is not an embed profile", p.id));
  if (texts.empty()) return {};
  if (p.backend == Backend::Mock) {
    std::vector<std::vector<double>> out;
    for (const auto& t : texts) out.push_back(mock_embedding(t, p.seed, p.dimension));
    std::lock_guard lock(mutex_);
    traces_.push_back({p.id, "embed", 1, true, {}});
    return out;
  }
  json request = {{"model", p.model.empty() ? env_or("HYPERDART_MODEL", "") : p.model},
                  {"input", texts}};
  std::vector<std::vector<double>> out;
  call(p, "embed", "/v1/embeddings", request.dump(), [&](const HttpResponse& response) {
    try {
      json body = json::parse(response.body);
      const json& data = body.at("data");
      if (data.size() != texts.size()) throw std::runtime_error("embedding count mismatch");
      out.assign(texts.size(), {});
      for (const json& item : data) {
        std::size_t index = item.at("index").get<std::size_t>();
        out.at(index) = item.at("embedding").get<std::vector<double>>();
      }
    } catch (const std::exception& err) {
      throw GatewayError(GatewayErrorKind::MalformedResponse, err.what());
    }
  });
  return out;
}

std::string ModelGateway::generate(const std::string& prompt, const std::string& profile_id,
                                   const GenerationParams& params, const std::string& system) {
  const ModelProfile p = profile(profile_id);
  if (p.kind != ProfileKind::Generate) {
    throw Error(fmt::format("profile '{}' is not a generate profile", p.id));
  }
  if (p.backend == Backend::Mock) {
    std::lock_guard lock(mutex_);
    traces_.push_back({p.id, "generate", 1, true, {}});
    return substitute(substitute(p.envelope, "{profile}", p.id), "{prompt}", prompt);
  }
  json messages = json::array();
  if (!system.empty()) messages.push_back({{"role", "system"}, {"content", system}});
  messages.push_back({{"role", "user"}, {"content", prompt}});
  json request = {{"model", p.model.empty() ? env_or("HYPERDART_MODEL", "") : p.model},
                  {"messages", messages},
                  {"max_tokens", params.max_tokens},
                  {"temperature", params.temperature},
                  {"seed", params.seed}};
  std::string content;
  call(p, "generate", "/v1/chat/completions", request.dump(), [&](const HttpResponse& response) {
    json choice;
    try {
      choice = json::parse(response.body).at("choices").at(0);
    } catch (const std::exception& err) {
      throw GatewayError(GatewayErrorKind::MalformedResponse, err.what());
    }
    if (choice.value("finish_reason", "") == "content_filter") {
      throw GatewayError(GatewayErrorKind::ContentFiltered, "completion withheld by content filter");
    }
    try {
      content = choice.at("message").at("content").get<std::string>();
    } catch (const std::exception& err) {
      throw GatewayError(GatewayErrorKind::MalformedResponse, err.what());
    }
  });
  return content;
}

std::size_t ModelGateway::count_tokens(std::string_view text, const std::string& profile_id) const {
  profile(profile_id);
  return (text.size() + 3) / 4;
}

GatewayEmbedder::GatewayEmbedder(std::shared_ptr<ModelGateway> gateway, std::string profile_id)
    : gateway_(std::move(gateway)), profile_id_(std::move(profile_id)) {
  if (gateway_->profile(profile_id_).kind != ProfileKind::Embed) {
    throw Error(fmt::format("profile '{}' is not an embed profile", profile_id_));
  }
}

std::vector<std::vector<double>> GatewayEmbedder::embed(const std::vector<std::string>& texts) const {
  return gateway_->embed(texts, profile_id_);
}

ProviderTokenizer::ProviderTokenizer(std::shared_ptr<ModelGateway> gateway, std::string profile_id)
    : gateway_(std::move(gateway)), profile_id_(std::move(profile_id)) {
  gateway_->profile(profile_id_);
}

std::vector<std::string> ProviderTokenizer::tokenize(std::string_view text) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < text.size(); i += 4) out.emplace_back(text.substr(i, 4));
  return out;
}

std::size_t ProviderTokenizer::count(std::string_view text) const {
  return gateway_->count_tokens(text, profile_id_);
}

}  // namespace hyperdart
