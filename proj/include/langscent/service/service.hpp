#pragma once

// Transport-independent JSON API. http_server mounts it on cpp-httplib; tests
// call handle() directly.
//
//   POST /sessions                          {l1?, l2?}            -> {session_id}
//   POST /sessions/import                   session JSON          -> {session_id}
//   POST /sessions/{id}/search              {text}                -> SearchResponse
//   POST /sessions/{id}/events              {kind, payload, query_ref?} -> ActivityEvent
//   POST /sessions/{id}/tooltip/translate   {selection}           -> contextual translation
//   POST /sessions/{id}/tooltip/preview     {selection}           -> other-language preview
//   POST /sessions/{id}/analysis            {function, nodes | base+target}
//   GET  /sessions/{id}/tree | timeline | metrics | export
//   GET  /health

#include <chrono>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "langscent/analytics/topics.hpp"
#include "langscent/core/error.hpp"
#include "langscent/providers/providers.hpp"
#include "langscent/service/session_store.hpp"

namespace langscent::service {

struct Request {
  std::string method;
  std::string path;
  std::string body;
  // Lowercase header names.
  std::map<std::string, std::string> headers;
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

struct ServiceOptions {
  LanguagePair default_pair;
  std::string cors_origin = "*";
  std::optional<std::filesystem::path> data_dir;
  std::function<TimestampMs()> clock;
  std::function<std::string()> id_generator;
  // Receives one JSON line per request; defaults to stderr.
  std::function<void(const std::string&)> log_sink;
  std::size_t idempotency_capacity = 1024;
};

int http_status(ErrorCode code);
nlohmann::json error_body(ErrorCode code, std::string_view message);

class Service {
 public:
  Service(providers::Providers providers, ServiceOptions options = {});

  Response handle(const Request& request);

  SessionStore& store() { return store_; }
  const providers::Providers& providers() const { return providers_; }

 private:
  struct Cached {
    std::string fingerprint;
    Response response;
  };

  Response dispatch(const Request& request, std::string& session_for_log);
  Response with_idempotency(const Request& request, const std::function<Response()>& run);

  nlohmann::json create_session(const nlohmann::json& body);
  nlohmann::json import_session(const std::string& body, int& status);
  nlohmann::json search(const std::string& id, const nlohmann::json& body);
  nlohmann::json record_event(const std::string& id, const nlohmann::json& body);
  nlohmann::json tooltip(const std::string& id, const std::string& mode, const nlohmann::json& body);
  nlohmann::json analysis(const std::string& id, const nlohmann::json& body);
  nlohmann::json view(const std::string& id, const std::string& what);

  providers::Providers providers_;
  ServiceOptions options_;
  SessionStore store_;
  analytics::TopicLabeler labeler_;

  std::mutex idem_mu_;
  std::map<std::string, Cached> idem_cache_;
  std::deque<std::string> idem_order_;
};

}  // namespace langscent::service
