#include "langscent/service/service.hpp"

#include <iostream>
#include <random>
#include <regex>

#include "langscent/analytics/analysis.hpp"
#include "langscent/analytics/views.hpp"
#include "langscent/core/classify.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"
#include "langscent/index/tooltips.hpp"
#include "langscent/metrics/metrics.hpp"
#include "langscent/pipeline/search_pipeline.hpp"

namespace langscent::service {

using nlohmann::json;

namespace {

const std::regex kSessionAction(R"(^/sessions/([^/]+)/(search|events|analysis|tree|timeline|metrics|export)$)");
const std::regex kTooltip(R"(^/sessions/([^/]+)/tooltip/(translate|preview)$)");

TimestampMs system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

std::string random_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out = "s";
  auto v = rng();
  for (int i = 0; i < 16; ++i, v >>= 4) out += kHex[v & 0xf];
  return out;
}

json body_json(const std::string& body) {
  if (text::is_blank(body)) return json::object();
  auto j = parse_json(body);
  if (!j.is_object()) throw Error(ErrorCode::invalid_input, "request body must be a JSON object");
  return j;
}

std::string required_string(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::invalid_input, std::string(key) + " must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> node_list(const json& body) {
  const auto it = body.find("nodes");
  if (it == body.end() || !it->is_array()) throw Error(ErrorCode::invalid_input, "nodes must be an array");
  std::vector<std::string> out;
  for (const auto& n : *it) {
    if (!n.is_string()) throw Error(ErrorCode::invalid_input, "node ids must be strings");
    out.push_back(n.get<std::string>());
  }
  return out;
}

Response json_response(int status, const json& body) { return {status, canonical_dump(body), {}}; }

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input:
    case ErrorCode::invalid_selection: return 400;
    case ErrorCode::not_found: return 404;
    case ErrorCode::quota_exceeded: return 429;
    case ErrorCode::provider_unavailable:
    case ErrorCode::degraded: return 503;
    case ErrorCode::undefined_metric:
    case ErrorCode::internal: return 500;
  }
  return 500;
}

json error_body(ErrorCode code, std::string_view message) {
  return json{{"error", {{"code", to_string(code)}, {"message", message}, {"retryable", is_retryable(code)}}}};
}

Service::Service(providers::Providers providers, ServiceOptions options)
    : providers_(std::move(providers)),
      options_(std::move(options)),
      store_(options_.data_dir, options_.default_pair.cjk_threshold),
      labeler_(providers_) {
  options_.default_pair.validate();
  if (!options_.clock) options_.clock = system_clock_ms;
  if (!options_.id_generator) options_.id_generator = random_id;
  if (!options_.log_sink) options_.log_sink = [](const std::string& line) { std::clog << line << '\n'; };
  store_.load_all(providers_);
}

Response Service::handle(const Request& request) {
  const auto started = std::chrono::steady_clock::now();
  std::string session_for_log;
  Response response;
  try {
    response = dispatch(request, session_for_log);
  } catch (const Error& e) {
    response = json_response(http_status(e.code()), error_body(e.code(), e.what()));
  } catch (const json::exception& e) {
    response = json_response(400, error_body(ErrorCode::invalid_input, e.what()));
  } catch (const std::exception& e) {
    response = json_response(500, error_body(ErrorCode::internal, e.what()));
  }
  response.headers["Content-Type"] = "application/json; charset=utf-8";
  response.headers["Access-Control-Allow-Origin"] = options_.cors_origin;
  response.headers["Access-Control-Allow-Headers"] = "Content-Type, Idempotency-Key";
  response.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";

  const auto elapsed =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  json log{{"ts", options_.clock()},
           {"method", request.method},
           {"path", request.path},
           {"status", response.status},
           {"duration_ms", elapsed}};
  if (!session_for_log.empty()) log["session_id"] = session_for_log;
  options_.log_sink(log.dump(-1, ' ', false, json::error_handler_t::replace));
  return response;
}

Response Service::dispatch(const Request& request, std::string& session_for_log) {
  const auto& m = request.method;
  const auto& path = request.path;
  if (m == "OPTIONS") return {204, "", {}};

  if (path == "/health") {
    if (m != "GET") return json_response(405, error_body(ErrorCode::invalid_input, "method not allowed"));
    return json_response(
        200, json{{"status", "ok"}, {"mode", providers_.config.mode == providers::Mode::mock ? "mock" : "live"}});
  }
  if (path == "/sessions") {
    if (m != "POST") return json_response(405, error_body(ErrorCode::invalid_input, "method not allowed"));
    return with_idempotency(request, [&] { return json_response(201, create_session(body_json(request.body))); });
  }
  if (path == "/sessions/import") {
    if (m != "POST") return json_response(405, error_body(ErrorCode::invalid_input, "method not allowed"));
    return with_idempotency(request, [&] {
      int status = 201;
      auto body = import_session(request.body, status);
      return json_response(status, body);
    });
  }

  std::smatch match;
  if (std::regex_match(path, match, kTooltip)) {
    session_for_log = match[1];
    if (m != "POST") return json_response(405, error_body(ErrorCode::invalid_input, "method not allowed"));
    return json_response(200, tooltip(match[1], match[2], body_json(request.body)));
  }
  if (std::regex_match(path, match, kSessionAction)) {
    const std::string id = match[1];
    const std::string action = match[2];
    session_for_log = id;
    const bool is_post = action == "search" || action == "events" || action == "analysis";
    if (m != (is_post ? "POST" : "GET")) {
      return json_response(405, error_body(ErrorCode::invalid_input, "method not allowed"));
    }
    if (action == "search") {
      return with_idempotency(request, [&] { return json_response(200, search(id, body_json(request.body))); });
    }
    if (action == "events") {
      return with_idempotency(request,
                              [&] { return json_response(201, record_event(id, body_json(request.body))); });
    }
    if (action == "analysis") return json_response(200, analysis(id, body_json(request.body)));
    return json_response(200, view(id, action));
  }
  return json_response(404, error_body(ErrorCode::not_found, "no route for " + path));
}

Response Service::with_idempotency(const Request& request, const std::function<Response()>& run) {
  const auto key_it = request.headers.find("idempotency-key");
  if (key_it == request.headers.end() || key_it->second.empty()) return run();
  const auto fingerprint = request.method + " " + request.path + "\n" + request.body;
  {
    std::lock_guard lock(idem_mu_);
    if (const auto it = idem_cache_.find(key_it->second); it != idem_cache_.end()) {
      if (it->second.fingerprint != fingerprint) {
        throw Error(ErrorCode::invalid_input, "idempotency key reused with a different request");
      }
      return it->second.response;
    }
  }
  auto response = run();
  if (response.status >= 500) return response;
  std::lock_guard lock(idem_mu_);
  if (const auto [it, fresh] = idem_cache_.emplace(key_it->second, Cached{fingerprint, response}); !fresh) {
    // A concurrent retry got there first; answer consistently.
    return it->second.response;
  }
  idem_order_.push_back(key_it->second);
  while (idem_order_.size() > options_.idempotency_capacity) {
    idem_cache_.erase(idem_order_.front());
    idem_order_.pop_front();
  }
  return response;
}

json Service::create_session(const json& body) {
  LanguagePair pair = options_.default_pair;
  const json& requested = body.contains("language_pair") ? body.at("language_pair") : body;
  if (requested.contains("l1")) pair.l1 = required_string(requested, "l1");
  if (requested.contains("l2")) pair.l2 = required_string(requested, "l2");
  pair.validate();
  std::string id;
  for (int attempt = 0; attempt < 8; ++attempt) {
    id = options_.id_generator();
    if (!store_.contains(id)) break;
  }
  store_.create(SearchSession(id, pair, options_.clock()), providers_);
  return json{{"session_id", id}};
}

json Service::import_session(const std::string& body, int& status) {
  auto session = session_from_json(parse_json(body), options_.default_pair.cjk_threshold);
  if (store_.contains(session.id())) {
    auto existing = store_.get(session.id());
    std::lock_guard lock(existing->mu);
    if (canonical_dump(json(existing->session)) != canonical_dump(json(session))) {
      throw Error(ErrorCode::invalid_input, "session " + session.id() + " exists with different content");
    }
    status = 200;
    return json{{"session_id", session.id()}};
  }
  const auto id = session.id();
  store_.create(std::move(session), providers_);
  status = 201;
  return json{{"session_id", id}};
}

json Service::search(const std::string& id, const json& body) {
  auto entry = store_.get(id);
  const auto text_in = text::trim(required_string(body, "text"));
  if (text_in.empty()) throw Error(ErrorCode::invalid_input, "query text must be non-empty");

  LanguagePair pair;
  {
    std::lock_guard lock(entry->mu);
    pair = entry->session.language_pair();
  }
  Query q;
  q.text = text_in;
  q.session_id = id;
  q.language = classify_language(text_in, pair, providers_.translation.get());

  // Providers run without the session lock; the query is recorded only once
  // a response exists.
  auto response = pipeline::run_bilingual_search(providers_, pair, q);

  std::lock_guard lock(entry->mu);
  const auto& e = store_.append(*entry, EventKind::query, QueryPayload{q.text, q.language}, std::nullopt,
                                options_.clock());
  entry->index->index_event(providers_, e);
  response.query_info.original.id = e.id;
  response.query_info.original.timestamp = e.timestamp;
  return json(response);
}

json Service::record_event(const std::string& id, const json& body) {
  auto entry = store_.get(id);
  const auto kind = parse_event_kind(required_string(body, "kind"));
  if (!kind) throw Error(ErrorCode::invalid_input, "unknown event kind");
  if (*kind == EventKind::query) throw Error(ErrorCode::invalid_input, "queries are recorded through /search");
  if (!body.contains("payload")) throw Error(ErrorCode::invalid_input, "payload required");

  std::optional<std::string> query_ref;
  if (body.contains("query_ref") && !body.at("query_ref").is_null()) query_ref = required_string(body, "query_ref");

  std::lock_guard lock(entry->mu);
  auto payload = payload_from_json(*kind, body.at("payload"), entry->session.language_pair());
  const auto& e = store_.append(*entry, *kind, std::move(payload), query_ref, options_.clock());
  const auto outcome = entry->index->index_event(providers_, e);
  json out = e;
  if (!outcome.item) out["index_skipped"] = outcome.skip_reason;
  return out;
}

json Service::tooltip(const std::string& id, const std::string& mode, const json& body) {
  auto entry = store_.get(id);
  const auto selection = required_string(body, "selection");
  if (text::is_blank(selection)) throw Error(ErrorCode::invalid_input, "selection must be non-empty");
  LanguagePair pair;
  {
    std::lock_guard lock(entry->mu);
    pair = entry->session.language_pair();
  }
  const auto source = classify_language(selection, pair, providers_.translation.get());
  if (mode == "translate") return json(index::contextual_translate(providers_, *entry->index, selection, source));
  return json(index::preview_other_language(providers_, pair, selection, source));
}

json Service::analysis(const std::string& id, const json& body) {
  auto entry = store_.get(id);
  const auto function = required_string(body, "function");
  SearchSession snapshot;
  {
    std::lock_guard lock(entry->mu);
    snapshot = entry->session;
  }
  if (function == "summarize") {
    return json(analytics::analyze_summarize(providers_, snapshot, labeler_, node_list(body)));
  }
  if (function == "compare") {
    return json(analytics::analyze_compare(providers_, snapshot, labeler_, required_string(body, "base"),
                                           required_string(body, "target")));
  }
  if (function == "suggest") {
    return json{{"suggestions", analytics::analyze_suggest(providers_, snapshot, labeler_, node_list(body))}};
  }
  throw Error(ErrorCode::invalid_input, "function must be summarize, compare or suggest");
}

json Service::view(const std::string& id, const std::string& what) {
  auto entry = store_.get(id);
  SearchSession snapshot;
  {
    std::lock_guard lock(entry->mu);
    snapshot = entry->session;
  }
  if (what == "tree") return json(analytics::build_semantic_tree(snapshot, labeler_));
  if (what == "timeline") return json(analytics::build_timeline(snapshot, labeler_));
  if (what == "metrics") return json(metrics::compute_session_metrics(snapshot, labeler_));
  return json(snapshot);
}

}  // namespace langscent::service
