#include "langscent/core/json.hpp"

#include "langscent/core/error.hpp"

namespace langscent {

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::invalid_input, "malformed document: " + what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object");
  const auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) malformed(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string optional_string(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<std::string> nullable_string(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::int64_t int_field(const Json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace

void to_json(Json& j, const LanguageTag& t) { j = t.code; }

void to_json(Json& j, const LanguagePair& p) { j = Json{{"l1", p.l1}, {"l2", p.l2}}; }

void to_json(Json& j, const Query& q) {
  j = Json{{"id", q.id},
           {"text", q.text},
           {"language", q.language},
           {"timestamp", q.timestamp},
           {"session_id", q.session_id}};
}

void to_json(Json& j, const ActivityEvent& e) {
  Json payload;
  if (const auto* q = e.as_query()) {
    payload = Json{{"text", q->text}, {"language", q->language}};
  } else if (const auto* s = e.as_source()) {
    payload = Json{{"url", s->url}, {"title", s->title}, {"snippet", s->snippet}};
  } else if (const auto* n = e.as_note()) {
    payload = Json{{"body", n->body}};
    if (n->url) payload["url"] = *n->url;
    if (n->supersedes) payload["supersedes"] = *n->supersedes;
  }
  j = Json{{"seq", e.seq},
           {"id", e.id},
           {"kind", to_string(e.kind)},
           {"timestamp", e.timestamp},
           {"payload", std::move(payload)}};
  if (e.query_ref) j["query_ref"] = *e.query_ref;
}

void to_json(Json& j, const SourceResult& r) {
  j = Json{{"url", r.url},
           {"title", r.title},
           {"snippet", r.snippet},
           {"language", r.language},
           {"rank", r.rank},
           {"keywords_other_language", r.keywords_other_language}};
}

void to_json(Json& j, const KeyPoint& k) {
  j = Json{{"text", k.text}, {"source_refs", k.source_refs}};
  if (k.fallback) j["fallback"] = true;
}

void to_json(Json& j, const LanguageSummary& s) {
  j = Json{{"language", s.language}, {"key_points", s.key_points}};
}

void to_json(Json& j, const SuggestedQuery& s) {
  j = Json{{"text", s.text}, {"language", s.language}};
}

void to_json(Json& j, const ComparisonPoint& c) {
  j = Json{{"kind", to_string(c.kind)}, {"text", c.text}, {"suggested_queries", c.suggested_queries}};
}

void to_json(Json& j, const ComparativeSummary& c) {
  j = Json{{"comparison", c.comparison}, {"summary_l1", c.summary_l1}, {"summary_l2", c.summary_l2}};
}

void to_json(Json& j, const QueryInfo& q) {
  j = Json{{"original", q.original}, {"rewritten_other", q.rewritten_other}, {"provenance", q.provenance}};
}

void to_json(Json& j, const SearchResponse& r) {
  j = Json{{"query_info", r.query_info},
           {"results", r.results},
           {"comparative_summary", r.comparative_summary},
           {"degraded", r.degraded},
           {"other_language_status", r.degraded ? "unavailable" : "available"},
           {"warnings", r.warnings}};
}

void to_json(Json& j, const SearchSession& s) {
  j = Json{{"id", s.id()},
           {"language_pair", s.language_pair()},
           {"created_at", s.created_at()},
           {"events", s.events()}};
}

std::string canonical_dump(const Json& j) {
  return j.dump(-1, ' ', false, Json::error_handler_t::strict);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    malformed(e.what());
  }
}

LanguagePair language_pair_from_json(const Json& j, double cjk_threshold) {
  LanguagePair pair{string_field(j, "l1"), string_field(j, "l2"), cjk_threshold};
  pair.validate();
  return pair;
}

EventPayload payload_from_json(EventKind kind, const Json& j, const LanguagePair& pair) {
  if (!j.is_object()) malformed("payload must be an object");
  switch (kind) {
    case EventKind::query:
      return QueryPayload{string_field(j, "text"), pair.resolve_or_throw(string_field(j, "language"))};
    case EventKind::click:
    case EventKind::save:
      return SourcePayload{string_field(j, "url"), optional_string(j, "title"),
                           optional_string(j, "snippet")};
    case EventKind::note:
      return NotePayload{string_field(j, "body"), nullable_string(j, "url"),
                         nullable_string(j, "supersedes")};
  }
  malformed("unknown event kind");
}

ActivityEvent event_from_json(const Json& j, const LanguagePair& pair) {
  ActivityEvent e;
  const auto seq = int_field(j, "seq");
  if (seq < 1) malformed("seq must be positive");
  e.seq = static_cast<std::uint64_t>(seq);
  e.id = string_field(j, "id");
  const auto kind = parse_event_kind(string_field(j, "kind"));
  if (!kind) malformed("unknown event kind");
  e.kind = *kind;
  e.timestamp = int_field(j, "timestamp");
  e.query_ref = nullable_string(j, "query_ref");
  e.payload = payload_from_json(e.kind, field(j, "payload"), pair);
  return e;
}

SearchSession session_from_json(const Json& j, double cjk_threshold) {
  try {
    SearchSession session(string_field(j, "id"),
                          language_pair_from_json(field(j, "language_pair"), cjk_threshold),
                          int_field(j, "created_at"));
    const auto& events = field(j, "events");
    if (!events.is_array()) malformed("events must be an array");
    for (const auto& ej : events) session.replay(event_from_json(ej, session.language_pair()));
    return session;
  } catch (const Json::exception& e) {
    malformed(e.what());
  }
}

}  // namespace langscent
