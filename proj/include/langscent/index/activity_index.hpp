#pragma once

// Per-session retrieval over the user's own activity: a token inverted index
// plus exact-cosine vector store, fused with reciprocal-rank fusion.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/core/model.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::index {

inline constexpr int kRrfConstant = 60;
inline constexpr int kIndexFormatVersion = 1;

struct IndexedItem {
  std::string item_id;
  std::string session_id;
  EventKind kind = EventKind::query;
  std::string text;
  LanguageTag language;
  providers::EmbeddingVector embedding;
  TimestampMs timestamp = 0;

  friend bool operator==(const IndexedItem&, const IndexedItem&) = default;
};

struct RetrievalHit {
  IndexedItem item;
  std::optional<int> lexical_rank;
  std::optional<int> semantic_rank;
  double fused_score = 0.0;
};

struct IndexOutcome {
  std::optional<IndexedItem> item;
  std::string skip_reason;
};

// One leg's ranking entry; legs arrive already ordered best-first.
struct FusedEntry {
  std::string item_id;
  std::optional<int> lexical_rank;
  std::optional<int> semantic_rank;
  double score = 0.0;
};

// score = sum over present legs of 1/(c + rank), ranks 1-based. Output is in
// first-appearance order (lexical leg first); callers sort.
std::vector<FusedEntry> fuse_rankings(const std::vector<std::string>& lexical,
                                      const std::vector<std::string>& semantic, int c = kRrfConstant);

// Searchable text of an event: query text, click title+snippet, saved snippet
// (title when the snippet is empty) or note body. Empty when none.
std::string item_text(const ActivityEvent& e);

class ActivityIndex {
 public:
  ActivityIndex(std::string session_id, LanguagePair pair);

  const std::string& session_id() const { return session_id_; }
  const LanguagePair& language_pair() const { return pair_; }

  // Idempotent on event id. A note that supersedes another note removes the
  // older item. Text-less events are skipped and the reason recorded.
  IndexOutcome index_event(const providers::Providers& p, const ActivityEvent& e);

  // Items in the other language only, top_k by fused score; ties go to the
  // newer timestamp, then item_id. `translated` skips the translation call
  // when the caller already has it. Throws Error{invalid_input} for top_k < 1.
  std::vector<RetrievalHit> retrieve_related(const providers::Providers& p, std::string_view text,
                                             const LanguageTag& source_language, int top_k,
                                             std::optional<std::string> translated = std::nullopt) const;

  // Drops everything and re-indexes the session's events in seq order.
  void rebuild(const providers::Providers& p, const SearchSession& session);

  std::size_t size() const;
  std::vector<IndexedItem> items() const;
  std::optional<IndexedItem> item(std::string_view item_id) const;
  std::map<std::string, std::string> skipped() const;

  // JSON lines: a header line with the format version, then one item per line.
  void save(const std::filesystem::path& path) const;
  static std::unique_ptr<ActivityIndex> load(const std::filesystem::path& path);

 private:
  void insert_locked(IndexedItem item);
  void erase_locked(const std::string& item_id);

  std::string session_id_;
  LanguagePair pair_;
  mutable std::shared_mutex mu_;
  std::map<std::string, IndexedItem> items_;
  std::map<std::string, std::set<std::string>> postings_;
  std::set<std::string> seen_events_;
  std::map<std::string, std::string> skipped_;
};

void to_json(nlohmann::json& j, const IndexedItem& item);
void to_json(nlohmann::json& j, const RetrievalHit& hit);

}  // namespace langscent::index
