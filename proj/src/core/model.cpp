#include "langscent/core/model.hpp"

#include <algorithm>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"
#include "langscent/core/url.hpp"

namespace langscent {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::invalid_input, msg); }

bool valid_code(std::string_view code) {
  if (code.empty() || code.size() > 35) return false;
  return std::all_of(code.begin(), code.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-';
  });
}

}  // namespace

void LanguagePair::validate() const {
  if (!valid_code(l1) || !valid_code(l2)) invalid("language codes must be non-empty BCP-47 tags");
  if (text::to_lower(l1) == text::to_lower(l2)) invalid("language pair needs two distinct languages");
  if (!(cjk_threshold >= 0.0 && cjk_threshold <= 1.0)) invalid("cjk_threshold must lie in [0,1]");
}

std::optional<LanguageTag> LanguagePair::resolve(std::string_view code) const {
  if (code == l1) return tag(Side::l1);
  if (code == l2) return tag(Side::l2);
  return std::nullopt;
}

LanguageTag LanguagePair::resolve_or_throw(std::string_view code) const {
  if (auto t = resolve(code)) return *t;
  invalid("language '" + std::string(code) + "' is not part of the pair " + l1 + "/" + l2);
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::query: return "query";
    case EventKind::click: return "click";
    case EventKind::save: return "save";
    case EventKind::note: return "note";
  }
  return "query";
}

std::optional<EventKind> parse_event_kind(std::string_view s) {
  if (s == "query") return EventKind::query;
  if (s == "click") return EventKind::click;
  if (s == "save") return EventKind::save;
  if (s == "note") return EventKind::note;
  return std::nullopt;
}

std::string_view to_string(ComparisonKind kind) {
  return kind == ComparisonKind::similarity ? "similarity" : "difference";
}

SearchSession::SearchSession(std::string id, LanguagePair pair, TimestampMs created_at)
    : id_(std::move(id)), pair_(std::move(pair)), created_at_(created_at) {
  if (id_.empty()) invalid("session id must be non-empty");
  pair_.validate();
}

void SearchSession::check(const ActivityEvent& event) const {
  const auto require_query_ref = [&](bool required) {
    if (!event.query_ref) {
      if (required) invalid(std::string(to_string(event.kind)) + " events need a query_ref");
      return;
    }
    const auto* target = find(*event.query_ref);
    if (target == nullptr || target->kind != EventKind::query) {
      invalid("query_ref '" + *event.query_ref + "' does not name a query in this session");
    }
  };
  const auto require_normalized = [](const std::string& url) {
    if (url.empty()) invalid("url must be non-empty");
    if (normalize_url(url) != url) invalid("url '" + url + "' is not in normalized form");
  };

  switch (event.kind) {
    case EventKind::query: {
      const auto* p = event.as_query();
      if (p == nullptr) invalid("query event needs a query payload");
      if (text::is_blank(p->text)) invalid("query text must be non-empty");
      if (!pair_.resolve(p->language.code) || pair_.resolve(p->language.code)->side != p->language.side) {
        invalid("query language does not belong to the session's pair");
      }
      if (event.query_ref) invalid("query events cannot carry a query_ref");
      break;
    }
    case EventKind::click:
    case EventKind::save: {
      const auto* p = event.as_source();
      if (p == nullptr) invalid("click/save events need a source payload");
      require_normalized(p->url);
      require_query_ref(true);
      break;
    }
    case EventKind::note: {
      const auto* p = event.as_note();
      if (p == nullptr) invalid("note event needs a note payload");
      if (text::is_blank(p->body)) invalid("note body must be non-empty");
      if (p->url) require_normalized(*p->url);
      if (p->supersedes) {
        const auto* old = find(*p->supersedes);
        if (old == nullptr || old->kind != EventKind::note) invalid("supersedes must name an earlier note");
      }
      require_query_ref(false);
      break;
    }
  }
}

const ActivityEvent& SearchSession::append(EventKind kind, EventPayload payload,
                                           std::optional<std::string> query_ref,
                                           TimestampMs timestamp) {
  if (auto* src = std::get_if<SourcePayload>(&payload)) src->url = normalize_url(src->url);
  if (auto* note = std::get_if<NotePayload>(&payload); note && note->url) {
    note->url = normalize_url(*note->url);
  }
  if (auto* q = std::get_if<QueryPayload>(&payload)) q->text = text::trim(q->text);

  ActivityEvent event;
  event.seq = events_.size() + 1;
  event.id = "e" + std::to_string(event.seq);
  event.kind = kind;
  event.query_ref = std::move(query_ref);
  event.timestamp = events_.empty() ? timestamp : std::max(timestamp, events_.back().timestamp);
  event.payload = std::move(payload);
  check(event);
  events_.push_back(std::move(event));
  return events_.back();
}

void SearchSession::replay(ActivityEvent event) {
  if (event.seq != events_.size() + 1) invalid("event seq out of order");
  if (event.id.empty() || find(event.id) != nullptr) invalid("event ids must be unique and non-empty");
  if (!events_.empty() && event.timestamp < events_.back().timestamp) {
    invalid("event timestamps must be non-decreasing");
  }
  check(event);
  events_.push_back(std::move(event));
}

const ActivityEvent* SearchSession::find(std::string_view event_id) const {
  const auto it = std::find_if(events_.begin(), events_.end(),
                               [&](const ActivityEvent& e) { return e.id == event_id; });
  return it == events_.end() ? nullptr : &*it;
}

std::vector<Query> SearchSession::queries() const {
  std::vector<Query> out;
  for (const auto& e : events_) {
    if (const auto* p = e.as_query()) out.push_back({e.id, p->text, p->language, e.timestamp, id_});
  }
  return out;
}

std::optional<Query> SearchSession::query(std::string_view query_id) const {
  const auto* e = find(query_id);
  if (e == nullptr) return std::nullopt;
  const auto* p = e->as_query();
  if (p == nullptr) return std::nullopt;
  return Query{e->id, p->text, p->language, e->timestamp, id_};
}

bool SearchSession::is_superseded(std::string_view event_id) const {
  return std::any_of(events_.begin(), events_.end(), [&](const ActivityEvent& e) {
    const auto* n = e.as_note();
    return n != nullptr && n->supersedes && *n->supersedes == event_id;
  });
}

std::vector<const ActivityEvent*> SearchSession::attachments(std::string_view query_id) const {
  std::vector<const ActivityEvent*> out;
  for (const auto& e : events_) {
    if (e.kind != EventKind::query && e.query_ref && *e.query_ref == query_id && !is_superseded(e.id)) {
      out.push_back(&e);
    }
  }
  return out;
}

}  // namespace langscent
