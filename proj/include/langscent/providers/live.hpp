#pragma once

// HTTP-backed providers. Wire shapes follow widely deployed APIs:
//   search     GET  {url}?q=&num=&lr=lang_<code>[&key=]  -> {items:[{link,title,snippet}]}
//   translate  POST {url} {q,source,target,format}       -> {translatedText}
//              POST {url with last segment "detect"} {q} -> [{language,confidence}]
//   embed      POST {url} {model,input}                  -> {data:[{embedding:[...]}]}
//   generate   POST {url} chat-completions request       -> {choices:[{message:{content}}]}

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "langscent/providers/config.hpp"
#include "langscent/providers/interfaces.hpp"

namespace langscent::providers {

struct HttpResult {
  int status = 0;
  std::string body;
};

// One endpoint. Transport failures and 5xx responses are retried once after a
// jittered backoff; 429 maps to Error{quota_exceeded}; other failures to
// Error{provider_unavailable}.
class HttpTransport {
 public:
  HttpTransport(const Endpoint& endpoint, int timeout_ms, int backoff_ms);

  nlohmann::json post_json(const nlohmann::json& body) const { return post_json_to(path_, body); }
  nlohmann::json post_json_to(const std::string& path, const nlohmann::json& body) const;
  nlohmann::json get_json(const std::multimap<std::string, std::string>& params) const;

  const std::string& path() const { return path_; }
  // Credential from the configured environment variable; empty when unset.
  const std::string& credential() const { return credential_; }

 private:
  HttpResult send(const std::string& method, const std::string& target, const std::string& body) const;
  nlohmann::json decode(const HttpResult& result) const;

  std::string origin_;
  std::string path_;
  std::string base_query_;
  std::string credential_;
  int timeout_ms_;
  int backoff_ms_;
  mutable std::mutex rng_mutex_;
  mutable std::mt19937 rng_{std::random_device{}()};
};

// Outbound HTTP attempts made by any HttpTransport in this process.
std::uint64_t outbound_request_count();

class LiveSearchProvider : public SearchProvider {
 public:
  LiveSearchProvider(const Endpoint& endpoint, int timeout_ms, int backoff_ms)
      : http_(endpoint, timeout_ms, backoff_ms) {}
  std::vector<SearchHit> search(std::string_view query, std::string_view language_code, int n) override;

 private:
  HttpTransport http_;
};

class LiveTranslationProvider : public TranslationProvider {
 public:
  LiveTranslationProvider(const Endpoint& endpoint, int timeout_ms, int backoff_ms)
      : http_(endpoint, timeout_ms, backoff_ms) {}
  std::string translate(std::string_view text, std::string_view source_code,
                        std::string_view target_code) override;
  std::string detect(std::string_view text, std::span<const std::string> candidates) override;

 private:
  HttpTransport http_;
};

class LiveEmbeddingProvider : public EmbeddingProvider {
 public:
  LiveEmbeddingProvider(const Endpoint& endpoint, int expected_dimension, int timeout_ms, int backoff_ms)
      : http_(endpoint, timeout_ms, backoff_ms), model_(endpoint.model), dimension_(expected_dimension) {}
  EmbeddingVector embed(std::string_view text) override;
  int dimension() const override { return dimension_.load(); }

 private:
  HttpTransport http_;
  std::string model_;
  std::atomic<int> dimension_;
  std::atomic<bool> observed_{false};
};

// Chat-completions client. A reply that fails validate_task_output gets one
// repair round trip; a second failure raises Error{degraded} with the raw text.
class LiveGenerativeProvider : public GenerativeProvider {
 public:
  LiveGenerativeProvider(const Endpoint& endpoint, int timeout_ms, int backoff_ms)
      : http_(endpoint, timeout_ms, backoff_ms), model_(endpoint.model) {}
  nlohmann::json generate(const GenerativeTask& task) override;

 private:
  std::string complete(const nlohmann::json& messages) const;

  HttpTransport http_;
  std::string model_;
};

}  // namespace langscent::providers
