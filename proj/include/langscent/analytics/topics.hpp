#pragma once

#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "langscent/core/model.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::analytics {

inline constexpr std::string_view kUncategorized = "uncategorized";
inline constexpr std::size_t kMaxTopicWords = 4;

// Lowercases, collapses whitespace and keeps at most kMaxTopicWords words.
// Blank input gives "uncategorized".
std::string normalize_topic(std::string_view label);

// Topic labels memoized per (session id, query id) so trees stay stable
// across rebuilds. Safe for concurrent use.
class TopicLabeler {
 public:
  explicit TopicLabeler(const providers::Providers& p) : providers_(p) {}

  std::string assign_topic(const Query& q);

  std::size_t memo_size() const;

 private:
  const providers::Providers& providers_;
  mutable std::mutex mu_;
  std::map<std::pair<std::string, std::string>, std::string> memo_;
};

}  // namespace langscent::analytics
