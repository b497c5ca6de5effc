#pragma once

// Side-panel models: queries grouped by topic then language, and the
// chronological timeline with language-switch markers.

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/analytics/topics.hpp"
#include "langscent/core/model.hpp"

namespace langscent::analytics {

// A click, save or note hanging under a query.
struct ActivityRef {
  std::string ref;
  EventKind kind = EventKind::click;
  std::string text;
  std::optional<std::string> url;
};

struct QueryNode {
  std::string query_ref;
  std::string text;
  LanguageTag language;
  TimestampMs timestamp = 0;
  std::string topic;
  std::vector<ActivityRef> children;
};

struct LanguageNode {
  std::string id;
  LanguageTag language;
  std::vector<QueryNode> children;
};

struct TopicNode {
  std::string id;
  std::string topic;
  std::vector<LanguageNode> children;
};

struct SemanticTree {
  std::vector<TopicNode> roots;
};

struct TimelineModel {
  std::vector<QueryNode> entries;
  // Indices i with entries[i].language != entries[i-1].language.
  std::vector<std::size_t> switch_markers;
};

std::string topic_node_id(std::string_view topic);
std::string language_node_id(std::string_view topic, std::string_view code);

// Topics in order of first occurrence, languages L1 then L2, queries in
// event order.
SemanticTree build_semantic_tree(const SearchSession& s, TopicLabeler& labeler);

// Query entries by timestamp (seq breaks ties).
TimelineModel build_timeline(const SearchSession& s, TopicLabeler& labeler);

void to_json(nlohmann::json& j, const ActivityRef& r);
void to_json(nlohmann::json& j, const QueryNode& n);
void to_json(nlohmann::json& j, const LanguageNode& n);
void to_json(nlohmann::json& j, const TopicNode& n);
void to_json(nlohmann::json& j, const SemanticTree& t);
void to_json(nlohmann::json& j, const TimelineModel& t);

}  // namespace langscent::analytics
