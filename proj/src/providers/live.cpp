#include "langscent/providers/live.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "langscent/core/error.hpp"
#include "langscent/core/url.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::providers {

using nlohmann::json;

namespace {

std::atomic<std::uint64_t> g_outbound_requests{0};

[[noreturn]] void unavailable(const std::string& msg) { throw Error(ErrorCode::provider_unavailable, msg); }

}  // namespace

std::uint64_t outbound_request_count() { return g_outbound_requests.load(); }

HttpTransport::HttpTransport(const Endpoint& endpoint, int timeout_ms, int backoff_ms)
    : timeout_ms_(timeout_ms), backoff_ms_(backoff_ms) {
  const auto& url = endpoint.url;
  const auto sep = url.find("://");
  if (url.empty() || sep == std::string::npos) {
    throw Error(ErrorCode::invalid_input, "endpoint url must be absolute: '" + url + "'");
  }
  const auto path_start = url.find_first_of("/?", sep + 3);
  origin_ = url.substr(0, path_start);
  std::string rest = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (const auto q = rest.find('?'); q != std::string::npos) {
    base_query_ = rest.substr(q + 1);
    rest.resize(q);
  }
  path_ = rest.empty() ? "/" : rest;
  if (!endpoint.api_key_env.empty()) {
    if (const char* value = std::getenv(endpoint.api_key_env.c_str())) credential_ = value;
  }
}

HttpResult HttpTransport::send(const std::string& method, const std::string& target,
                               const std::string& body) const {
  httplib::Headers headers = {{"Accept", "application/json"}};
  if (!credential_.empty()) headers.emplace("Authorization", "Bearer " + credential_);

  std::string last_error;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt > 0) {
      double jitter = 0.0;
      {
        std::lock_guard lock(rng_mutex_);
        jitter = std::uniform_real_distribution<double>(0.5, 1.5)(rng_);
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<int>(backoff_ms_ * jitter)));
    }
    httplib::Client client(origin_);
    client.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
    client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
    client.set_write_timeout(std::chrono::milliseconds(timeout_ms_));
    ++g_outbound_requests;
    auto res = method == "GET" ? client.Get(target, headers)
                               : client.Post(target, headers, body, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "upstream status " + std::to_string(res->status);
      continue;
    }
    if (res->status == 429) throw Error(ErrorCode::quota_exceeded, origin_ + ": quota exhausted");
    if (res->status >= 400) unavailable(origin_ + ": upstream status " + std::to_string(res->status));
    return {res->status, res->body};
  }
  unavailable(origin_ + ": " + last_error);
}

json HttpTransport::decode(const HttpResult& result) const {
  try {
    return json::parse(result.body);
  } catch (const json::parse_error&) {
    unavailable(origin_ + ": response is not JSON");
  }
}

json HttpTransport::post_json_to(const std::string& path, const json& body) const {
  const auto target = base_query_.empty() ? path : path + "?" + base_query_;
  return decode(send("POST", target, body.dump()));
}

json HttpTransport::get_json(const std::multimap<std::string, std::string>& params) const {
  httplib::Params p(params.begin(), params.end());
  auto query = httplib::detail::params_to_query_str(p);
  if (!base_query_.empty()) query = base_query_ + (query.empty() ? "" : "&" + query);
  return decode(send("GET", query.empty() ? path_ : path_ + "?" + query, {}));
}

std::vector<SearchHit> LiveSearchProvider::search(std::string_view query, std::string_view language_code,
                                                  int n) {
  std::multimap<std::string, std::string> params = {
      {"q", std::string(query)}, {"num", std::to_string(n)}, {"lr", "lang_" + std::string(language_code)}};
  if (!http_.credential().empty()) params.emplace("key", http_.credential());
  const auto body = http_.get_json(params);
  std::vector<SearchHit> hits;
  if (!body.is_object() || !body.contains("items")) return hits;
  if (!body["items"].is_array()) unavailable("search: items must be an array");
  for (const auto& item : body["items"]) {
    if (!item.is_object() || !item.contains("link") || !item["link"].is_string()) continue;
    try {
      hits.push_back({normalize_url(item["link"].get<std::string>()), item.value("title", ""),
                      item.value("snippet", "")});
    } catch (const Error&) {
      // unparseable link; drop the item
    }
  }
  return hits;
}

std::string LiveTranslationProvider::translate(std::string_view text, std::string_view source_code,
                                               std::string_view target_code) {
  json body = {{"q", text}, {"source", source_code}, {"target", target_code}, {"format", "text"}};
  if (!http_.credential().empty()) body["api_key"] = http_.credential();
  const auto res = http_.post_json(body);
  if (!res.is_object() || !res.contains("translatedText") || !res["translatedText"].is_string()) {
    unavailable("translate: response lacks translatedText");
  }
  return res["translatedText"].get<std::string>();
}

std::string LiveTranslationProvider::detect(std::string_view text, std::span<const std::string> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::invalid_input, "detect needs candidate languages");
  auto path = http_.path();
  path = path.substr(0, path.rfind('/') + 1) + "detect";
  json body = {{"q", text}};
  if (!http_.credential().empty()) body["api_key"] = http_.credential();
  const auto res = http_.post_json_to(path, body);
  if (!res.is_array()) unavailable("detect: response must be an array");
  std::string best;
  double best_conf = -1.0;
  for (const auto& d : res) {
    if (!d.is_object() || !d.contains("language")) continue;
    const auto lang = d["language"].get<std::string>();
    const double conf = d.value("confidence", 0.0);
    const bool candidate = std::find(candidates.begin(), candidates.end(), lang) != candidates.end();
    if (candidate && conf > best_conf) {
      best = lang;
      best_conf = conf;
    }
  }
  return best.empty() ? candidates.front() : best;
}

EmbeddingVector LiveEmbeddingProvider::embed(std::string_view text) {
  const auto res = http_.post_json({{"model", model_}, {"input", text}});
  try {
    const auto& values = res.at("data").at(0).at("embedding");
    auto v = l2_normalize(values.get<std::vector<double>>());
    const int dim = static_cast<int>(v.dimension());
    if (dim < 2) unavailable("embed: dimension below 2");
    int expected = dimension_.load();
    if (expected != dim) {
      // The first response fixes the provider-defined dimension.
      if (!observed_.exchange(true)) {
        dimension_.store(dim);
      } else {
        unavailable("embed: dimension changed between calls");
      }
    } else {
      observed_.store(true);
    }
    return v;
  } catch (const json::exception&) {
    unavailable("embed: response lacks data[0].embedding");
  }
}

std::string LiveGenerativeProvider::complete(const json& messages) const {
  json body = {{"model", model_},
               {"messages", messages},
               {"temperature", 0},
               {"response_format", {{"type", "json_object"}}}};
  const auto res = http_.post_json(body);
  try {
    return res.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    unavailable("generate: response lacks choices[0].message.content");
  }
}

json LiveGenerativeProvider::generate(const GenerativeTask& task) {
  json languages = task.output_languages;
  json messages = json::array(
      {{{"role", "system"},
        {"content", "You are the text-processing component of a bilingual search workbench. "
                    "Reply with a single JSON object and nothing else. Contract: " +
                        output_contract(task.kind) + " Output languages: " + languages.dump() + "."}},
       {{"role", "user"},
        {"content", "Task: " + std::string(to_string(task.kind)) + "\nInputs: " + task.inputs.dump()}}});

  std::string raw;
  std::string problem;
  for (int attempt = 0; attempt < 2; ++attempt) {
    if (attempt > 0) {
      messages.push_back({{"role", "assistant"}, {"content", raw}});
      messages.push_back({{"role", "user"},
                          {"content", "That reply was invalid (" + problem +
                                          "). Reply again with only the corrected JSON object."}});
    }
    raw = complete(messages);
    try {
      auto out = json::parse(raw);
      validate_task_output(task, out);
      return out;
    } catch (const json::parse_error&) {
      problem = "not valid JSON";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::degraded) throw;
      problem = e.what();
    }
  }
  throw Error(ErrorCode::degraded, std::string(to_string(task.kind)) + ": " + problem, raw);
}

}  // namespace langscent::providers
