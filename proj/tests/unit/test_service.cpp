#include "catch2/catch_amalgamated.hpp"

#include <filesystem>
#include <random>
#include <set>
#include <thread>

#include "api_client.hpp"
#include "fixtures.hpp"
#include "langscent/core/json.hpp"
#include "langscent/providers/live.hpp"
#include "langscent/service/session_store.hpp"
#include "schema_validator.hpp"

using namespace langscent;
using langscent::testing::ApiClient;
using nlohmann::json;

namespace {

const testing::SchemaBundle& schemas() {
  static const auto bundle = testing::SchemaBundle::load_default();
  return bundle;
}

void check_log_valid(const ApiClient& api) {
  for (const auto& ex : api.log) {
    INFO(ex.method << " " << ex.path << " -> " << ex.status << " " << ex.body.dump());
    REQUIRE_FALSE(ex.def.empty());
    CHECK(schemas().validate(ex.body, ex.def).empty());
  }
}

json source(const std::string& url, const std::string& title) {
  return {{"url", url}, {"title", title}, {"snippet", ""}};
}

// Drives a session through search, events and a note chain.
std::string populate(ApiClient& api) {
  const auto id = api.create_session();
  const auto base = "/sessions/" + id;
  const auto q1 = api.call("POST", base + "/search", {{"text", "swiss food"}}).body.at("query_info").at("original");
  const auto q1_id = q1.at("id").get<std::string>();
  api.call("POST", base + "/events", {{"kind", "click"}, {"payload", source("https://fondue.example/a", "Fondue")},
                                      {"query_ref", q1_id}});
  const auto q2 = api.call("POST", base + "/search", {{"text", "瑞士美食"}}).body.at("query_info").at("original");
  api.call("POST", base + "/events", {{"kind", "save"},
                                      {"payload", source("https://meishi.example", "瑞士奶酪火锅")},
                                      {"query_ref", q2.at("id")}});
  const auto note = api.call("POST", base + "/events",
                             {{"kind", "note"}, {"payload", {{"body", "try raclette"}}}, {"query_ref", q1_id}});
  api.call("POST", base + "/events",
           {{"kind", "note"}, {"payload", {{"body", "try raclette in Bern"}, {"supersedes", note.body.at("id")}}}});
  return id;
}

}  // namespace

TEST_CASE("status mapping") {
  CHECK(service::http_status(ErrorCode::invalid_input) == 400);
  CHECK(service::http_status(ErrorCode::invalid_selection) == 400);
  CHECK(service::http_status(ErrorCode::not_found) == 404);
  CHECK(service::http_status(ErrorCode::quota_exceeded) == 429);
  CHECK(service::http_status(ErrorCode::provider_unavailable) == 503);
  CHECK(service::http_status(ErrorCode::degraded) == 503);
  CHECK(service::http_status(ErrorCode::internal) == 500);
  const auto body = service::error_body(ErrorCode::provider_unavailable, "down");
  CHECK(body.at("error").at("retryable") == true);
  CHECK(service::error_body(ErrorCode::invalid_input, "x").at("error").at("retryable") == false);
}

TEST_CASE("full endpoint suite validates against the schemas") {
  const auto before = providers::outbound_request_count();
  ApiClient api;
  api.call("GET", "/health");
  const auto id = populate(api);
  const auto base = "/sessions/" + id;
  api.call("POST", base + "/tooltip/translate", {{"selection", "visa process"}});
  api.call("POST", base + "/tooltip/preview", {{"selection", "fondue"}});
  const auto tree = api.call("GET", base + "/tree");
  CHECK(tree.status == 200);
  const auto topic = tree.body.at("roots").at(0).at("id").get<std::string>();
  const auto timeline = api.call("GET", base + "/timeline");
  const auto metrics = api.call("GET", base + "/metrics");
  CHECK(timeline.body.at("switch_markers").size() == metrics.body.at("num_switches").get<std::size_t>());
  CHECK(metrics.body.at("num_queries") == 2);
  CHECK(metrics.body.at("num_sources") == 2);

  const auto events = api.call("GET", base + "/export").body.at("events");
  const auto q1 = events.at(0).at("id").get<std::string>();
  const auto q2 = events.at(2).at("id").get<std::string>();
  CHECK(api.call("POST", base + "/analysis", {{"function", "summarize"}, {"nodes", {topic}}}).status == 200);
  CHECK(api.call("POST", base + "/analysis", {{"function", "compare"}, {"base", q1}, {"target", q2}}).status == 200);
  CHECK(api.call("POST", base + "/analysis", {{"function", "suggest"}, {"nodes", {q1}}}).status == 200);

  // Error paths are part of the contract too.
  CHECK(api.call("GET", "/sessions/nope/tree").status == 404);
  CHECK(api.call("POST", base + "/search", {{"text", "   "}}).status == 400);
  CHECK(api.call("POST", base + "/search", {{"q", "x"}}).status == 400);
  CHECK(api.call("POST", base + "/events", {{"kind", "query"}, {"payload", json::object()}}).status == 400);
  CHECK(api.call("POST", base + "/events", {{"kind", "click"}, {"payload", source("not a url", "x")}}).status == 400);
  CHECK(api.call("POST", base + "/events",
                 {{"kind", "click"}, {"payload", source("https://a.example", "x")}, {"query_ref", "missing"}})
            .status == 400);
  CHECK(api.call("POST", base + "/analysis", {{"function", "summarize"}, {"nodes", {"missing"}}}).status == 400);
  CHECK(api.call("POST", base + "/analysis", {{"function", "dance"}}).status == 400);
  CHECK(api.call("POST", base + "/analysis", {{"function", "compare"}, {"base", q1}, {"target", q1}}).status == 400);
  CHECK(api.call("POST", base + "/tooltip/translate", {{"selection", ""}}).status == 400);
  CHECK(api.call("GET", base + "/search").status == 405);
  CHECK(api.call("DELETE", "/sessions").status == 405);
  CHECK(api.call("GET", "/nowhere").status == 404);
  CHECK(api.call("POST", "/sessions", {{"l1", "en"}, {"l2", "en"}}).status == 400);

  check_log_valid(api);
  CHECK(providers::outbound_request_count() == before);
}

TEST_CASE("malformed bodies are 400") {
  ApiClient api;
  const auto id = api.create_session();
  const auto r = api.raw("POST", "/sessions/" + id + "/search", "{not json");
  CHECK(r.status == 400);
  CHECK(json::parse(r.body).at("error").at("code") == "invalid_input");
  CHECK(api.raw("POST", "/sessions/" + id + "/search", "[1,2]").status == 400);
  CHECK(api.raw("POST", "/sessions/import", "{\"id\":\"x\"}").status == 400);
}

TEST_CASE("cors and preflight") {
  service::ServiceOptions options;
  options.cors_origin = "http://localhost:5173";
  ApiClient api(testing::mock_providers(), options);
  const auto pre = api.raw("OPTIONS", "/sessions");
  CHECK(pre.status == 204);
  CHECK(pre.headers.at("Access-Control-Allow-Origin") == "http://localhost:5173");
  CHECK(pre.headers.at("Access-Control-Allow-Headers").find("Idempotency-Key") != std::string::npos);
  const auto health = api.raw("GET", "/health");
  CHECK(health.headers.at("Access-Control-Allow-Origin") == "http://localhost:5173");
  CHECK(health.headers.at("Content-Type").find("application/json") == 0);
}

TEST_CASE("idempotency keys replay the first response") {
  ApiClient api;
  const auto first = api.raw("POST", "/sessions", "{}", {{"idempotency-key", "k1"}});
  const auto again = api.raw("POST", "/sessions", "{}", {{"idempotency-key", "k1"}});
  CHECK(first.status == 201);
  CHECK(again.body == first.body);
  CHECK(api.service().store().ids().size() == 1);
  CHECK(api.raw("POST", "/sessions", "{\"l1\":\"en\"}", {{"idempotency-key", "k1"}}).status == 400);

  const auto id = json::parse(first.body).at("session_id").get<std::string>();
  const auto path = "/sessions/" + id + "/events";
  const auto body = json{{"kind", "note"}, {"payload", {{"body", "hello"}}}}.dump();
  const auto e1 = api.raw("POST", path, body, {{"idempotency-key", "n1"}});
  const auto e2 = api.raw("POST", path, body, {{"idempotency-key", "n1"}});
  CHECK(e1.body == e2.body);
  CHECK(json::parse(api.raw("GET", "/sessions/" + id + "/export").body).at("events").size() == 1);
  api.raw("POST", path, body);
  CHECK(json::parse(api.raw("GET", "/sessions/" + id + "/export").body).at("events").size() == 2);
}

TEST_CASE("export import export is byte-identical") {
  std::mt19937 rng(123);
  for (int trial = 0; trial < 20; ++trial) {
    ApiClient source_api;
    ApiClient target_api;
    const auto s = testing::random_session(rng, 10, "imp-" + std::to_string(trial));
    const auto seeded = source_api.raw("POST", "/sessions/import", canonical_dump(json(s)));
    REQUIRE(seeded.status == 201);
    const auto exported = source_api.raw("GET", "/sessions/" + s.id() + "/export").body;
    CHECK(exported == canonical_dump(json(s)));
    REQUIRE(target_api.raw("POST", "/sessions/import", exported).status == 201);
    CHECK(target_api.raw("GET", "/sessions/" + s.id() + "/export").body == exported);
    // Re-importing identical content is accepted; different content is not.
    CHECK(target_api.raw("POST", "/sessions/import", exported).status == 200);
    auto changed = json::parse(exported);
    changed["created_at"] = changed["created_at"].get<long long>() + 1;
    CHECK(target_api.raw("POST", "/sessions/import", changed.dump()).status == 400);
  }
}

TEST_CASE("data directory persists and replays sessions") {
  const auto dir = std::filesystem::temp_directory_path() / "langscent-service-test";
  std::filesystem::remove_all(dir);
  std::string id;
  std::string exported;
  std::string metrics;
  {
    service::ServiceOptions options;
    options.data_dir = dir;
    ApiClient api(testing::mock_providers(), options);
    id = populate(api);
    exported = api.raw("GET", "/sessions/" + id + "/export").body;
    metrics = api.raw("GET", "/sessions/" + id + "/metrics").body;
  }
  REQUIRE(std::filesystem::exists(dir / (id + ".jsonl")));
  service::ServiceOptions options;
  options.data_dir = dir;
  options.id_generator = [] { return std::string("other"); };
  ApiClient api(testing::mock_providers(), options);
  CHECK(api.raw("GET", "/sessions/" + id + "/export").body == exported);
  CHECK(api.raw("GET", "/sessions/" + id + "/metrics").body == metrics);
  const auto tooltip = api.call("POST", "/sessions/" + id + "/tooltip/translate", {{"selection", "raclette"}});
  CHECK(tooltip.status == 200);
  std::filesystem::remove_all(dir);
}

TEST_CASE("jsonl log round trip") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = testing::random_session(rng, 10, "log-" + std::to_string(trial));
    CHECK(service::session_from_jsonl(service::session_to_jsonl(s)) == s);
  }
  CHECK_THROWS_AS(service::session_from_jsonl(""), Error);
}

TEST_CASE("concurrent requests on one session") {
  ApiClient api;
  const auto id = api.create_session();
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 10; ++i) {
        const auto body = json{{"kind", "note"}, {"payload", {{"body", "note " + std::to_string(t * 10 + i)}}}};
        api.raw("POST", "/sessions/" + id + "/events", body.dump());
        api.raw("GET", "/sessions/" + id + "/metrics");
      }
    });
  }
  for (auto& th : threads) th.join();
  const auto events = json::parse(api.raw("GET", "/sessions/" + id + "/export").body).at("events");
  REQUIRE(events.size() == 40);
  for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i].at("seq") == i + 1);
}

TEST_CASE("request log lines") {
  std::vector<std::string> lines;
  std::mutex mu;
  service::ServiceOptions options;
  options.log_sink = [&](const std::string& l) {
    std::lock_guard lock(mu);
    lines.push_back(l);
  };
  ApiClient api(testing::mock_providers(), options);
  const auto id = api.create_session();
  api.raw("GET", "/sessions/" + id + "/tree");
  REQUIRE(lines.size() == 2);
  const auto line = json::parse(lines[1]);
  CHECK(line.at("path") == "/sessions/" + id + "/tree");
  CHECK(line.at("status") == 200);
  CHECK(line.at("session_id") == id);
  CHECK(line.contains("duration_ms"));
}
