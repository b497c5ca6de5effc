#pragma once

// Shared domain vocabulary: languages, queries, activity events, search
// results and the bilingual comparative summary.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace langscent {

using TimestampMs = std::int64_t;

enum class Side : std::uint8_t { l1, l2 };

constexpr Side opposite(Side s) noexcept { return s == Side::l1 ? Side::l2 : Side::l1; }

// A language resolved against a session's LanguagePair. Compares by side; the
// code is carried along so that serialized forms name the language.
struct LanguageTag {
  Side side = Side::l1;
  std::string code;

  friend bool operator==(const LanguageTag& a, const LanguageTag& b) { return a.side == b.side; }
};

struct LanguagePair {
  std::string l1 = "en";
  std::string l2 = "zh";
  double cjk_threshold = 0.3;

  // Throws Error{invalid_input}.
  void validate() const;

  LanguageTag tag(Side side) const { return {side, side == Side::l1 ? l1 : l2}; }
  LanguageTag other(const LanguageTag& t) const { return tag(opposite(t.side)); }
  std::optional<LanguageTag> resolve(std::string_view code) const;
  // Throws Error{invalid_input} when the code is not part of the pair.
  LanguageTag resolve_or_throw(std::string_view code) const;

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
};

struct Query {
  std::string id;
  std::string text;
  LanguageTag language;
  TimestampMs timestamp = 0;
  std::string session_id;
};

enum class EventKind : std::uint8_t { query, click, save, note };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view s);

struct QueryPayload {
  std::string text;
  LanguageTag language;

  friend bool operator==(const QueryPayload&, const QueryPayload&) = default;
};

// click and save
struct SourcePayload {
  std::string url;
  std::string title;
  std::string snippet;

  friend bool operator==(const SourcePayload&, const SourcePayload&) = default;
};

struct NotePayload {
  std::string body;
  std::optional<std::string> url;
  // Id of an earlier note this one replaces.
  std::optional<std::string> supersedes;

  friend bool operator==(const NotePayload&, const NotePayload&) = default;
};

using EventPayload = std::variant<QueryPayload, SourcePayload, NotePayload>;

struct ActivityEvent {
  std::uint64_t seq = 0;
  std::string id;
  EventKind kind = EventKind::query;
  std::optional<std::string> query_ref;
  TimestampMs timestamp = 0;
  EventPayload payload;

  const QueryPayload* as_query() const { return std::get_if<QueryPayload>(&payload); }
  const SourcePayload* as_source() const { return std::get_if<SourcePayload>(&payload); }
  const NotePayload* as_note() const { return std::get_if<NotePayload>(&payload); }

  friend bool operator==(const ActivityEvent&, const ActivityEvent&) = default;
};

struct SourceResult {
  std::string url;
  std::string title;
  std::string snippet;
  LanguageTag language;
  int rank = 1;
  std::vector<std::string> keywords_other_language;
};

struct KeyPoint {
  std::string text;
  std::vector<std::string> source_refs;
  // Set when the generative step failed and the point is a title fallback.
  bool fallback = false;
};

struct LanguageSummary {
  LanguageTag language;
  std::vector<KeyPoint> key_points;
};

struct SuggestedQuery {
  std::string text;
  LanguageTag language;

  friend bool operator==(const SuggestedQuery& a, const SuggestedQuery& b) {
    return a.text == b.text && a.language == b.language;
  }
};

enum class ComparisonKind : std::uint8_t { similarity, difference };

std::string_view to_string(ComparisonKind kind);

struct ComparisonPoint {
  ComparisonKind kind = ComparisonKind::similarity;
  std::string text;
  std::vector<SuggestedQuery> suggested_queries;
};

struct ComparativeSummary {
  std::vector<ComparisonPoint> comparison;
  LanguageSummary summary_l1;
  LanguageSummary summary_l2;
};

struct QueryInfo {
  Query original;
  SuggestedQuery rewritten_other;
  std::string provenance;
};

namespace provenance {
inline constexpr std::string_view kRewritten = "translate+rewrite/v1";
inline constexpr std::string_view kRawTranslation = "translate-only/v1";
inline constexpr std::string_view kUnavailable = "unavailable/v1";
}  // namespace provenance

struct SearchResponse {
  QueryInfo query_info;
  std::vector<SourceResult> results;
  ComparativeSummary comparative_summary;
  // True when the other-language branch failed and the response is monolingual.
  bool degraded = false;
  std::vector<std::string> warnings;
};

// Append-only event log for one user session. Not thread-safe; callers
// serialize writers (see service::SessionStore).
class SearchSession {
 public:
  SearchSession() = default;
  SearchSession(std::string id, LanguagePair pair, TimestampMs created_at);

  const std::string& id() const { return id_; }
  const LanguagePair& language_pair() const { return pair_; }
  TimestampMs created_at() const { return created_at_; }
  const std::vector<ActivityEvent>& events() const { return events_; }

  // Assigns seq and id, normalizes urls and checks references. The timestamp is
  // clamped so it never precedes the previous event. Throws Error{invalid_input}.
  const ActivityEvent& append(EventKind kind, EventPayload payload,
                              std::optional<std::string> query_ref, TimestampMs timestamp);

  // Re-validates and appends an event as read back from storage; seq and id must
  // match what append() would have assigned.
  void replay(ActivityEvent event);

  const ActivityEvent* find(std::string_view event_id) const;
  std::vector<Query> queries() const;
  std::optional<Query> query(std::string_view query_id) const;

  // Whether a later note supersedes this event.
  bool is_superseded(std::string_view event_id) const;

  // click/save/note events attached to a query, in seq order, superseded notes skipped.
  std::vector<const ActivityEvent*> attachments(std::string_view query_id) const;

  friend bool operator==(const SearchSession&, const SearchSession&) = default;

 private:
  void check(const ActivityEvent& event) const;

  std::string id_;
  LanguagePair pair_;
  TimestampMs created_at_ = 0;
  std::vector<ActivityEvent> events_;
};

}  // namespace langscent
