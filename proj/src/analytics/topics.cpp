#include "langscent/analytics/topics.hpp"

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::analytics {

std::string normalize_topic(std::string_view label) {
  const auto lower = text::to_lower(text::strip_leading_marker(label));
  std::string out;
  std::size_t words = 0;
  std::string word;
  auto flush = [&] {
    if (word.empty()) return;
    if (words < kMaxTopicWords) {
      if (!out.empty()) out += ' ';
      out += word;
      ++words;
    }
    word.clear();
  };
  for (const char32_t cp : text::decode_utf8(lower)) {
    if (text::is_space(cp)) {
      flush();
    } else {
      text::append_utf8(word, cp);
    }
  }
  flush();
  return out.empty() ? std::string(kUncategorized) : out;
}

std::string TopicLabeler::assign_topic(const Query& q) {
  const auto key = std::make_pair(q.session_id, q.id);
  {
    std::lock_guard lock(mu_);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  std::string label;
  try {
    label = normalize_topic(
        providers::generate(providers_, providers::label_topic_task(q.text)).at("topic").get<std::string>());
  } catch (const Error& e) {
    // A transient outage should not pin the fallback label forever.
    if (is_retryable(e.code())) return std::string(kUncategorized);
    label = std::string(kUncategorized);
  }
  std::lock_guard lock(mu_);
  // First writer wins so concurrent callers agree.
  return memo_.emplace(key, std::move(label)).first->second;
}

std::size_t TopicLabeler::memo_size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

}  // namespace langscent::analytics
