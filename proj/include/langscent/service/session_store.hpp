#pragma once

// Owns live sessions and their activity indexes. Each session has its own
// mutex; callers hold it while reading or appending. With a data directory,
// every session is an append-only JSON-lines log that is replayed on start.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "langscent/core/model.hpp"
#include "langscent/index/activity_index.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::service {

struct SessionEntry {
  std::mutex mu;
  SearchSession session;
  std::unique_ptr<index::ActivityIndex> index;
};

class SessionStore {
 public:
  explicit SessionStore(std::optional<std::filesystem::path> data_dir = std::nullopt, double cjk_threshold = 0.3);

  // Throws Error{invalid_input} when the id is taken.
  std::shared_ptr<SessionEntry> create(SearchSession session, const providers::Providers& p);
  // Throws Error{not_found}.
  std::shared_ptr<SessionEntry> get(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::vector<std::string> ids() const;

  // Appends and persists; the caller holds entry.mu.
  const ActivityEvent& append(SessionEntry& entry, EventKind kind, EventPayload payload,
                              std::optional<std::string> query_ref, TimestampMs timestamp);

  // Replays every log in the data directory. Returns the number loaded.
  std::size_t load_all(const providers::Providers& p);

  const std::optional<std::filesystem::path>& data_dir() const { return data_dir_; }

 private:
  std::filesystem::path log_path(const std::string& id) const;
  void write_log(const SearchSession& s) const;
  void append_log(const SearchSession& s, const ActivityEvent& e) const;

  std::optional<std::filesystem::path> data_dir_;
  double cjk_threshold_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions_;
};

// Session as persisted: a header line then one event per line.
std::string session_to_jsonl(const SearchSession& s);
SearchSession session_from_jsonl(std::string_view text, double cjk_threshold = 0.3);

}  // namespace langscent::service
