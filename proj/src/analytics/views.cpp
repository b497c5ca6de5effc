#include "langscent/analytics/views.hpp"

#include <algorithm>

#include "langscent/core/json.hpp"
#include "langscent/index/activity_index.hpp"

namespace langscent::analytics {

using nlohmann::json;

namespace {

QueryNode query_node(const SearchSession& s, const ActivityEvent& e, TopicLabeler& labeler) {
  const auto q = s.query(e.id);
  QueryNode node{e.id, q->text, q->language, q->timestamp, labeler.assign_topic(*q), {}};
  for (const auto* a : s.attachments(e.id)) {
    ActivityRef ref{a->id, a->kind, index::item_text(*a), std::nullopt};
    if (const auto* src = a->as_source()) ref.url = src->url;
    if (const auto* note = a->as_note()) ref.url = note->url;
    node.children.push_back(std::move(ref));
  }
  return node;
}

}  // namespace

std::string topic_node_id(std::string_view topic) { return "topic:" + std::string(topic); }

std::string language_node_id(std::string_view topic, std::string_view code) {
  return topic_node_id(topic) + "/" + std::string(code);
}

SemanticTree build_semantic_tree(const SearchSession& s, TopicLabeler& labeler) {
  SemanticTree tree;
  const auto& pair = s.language_pair();
  for (const auto& e : s.events()) {
    if (e.kind != EventKind::query) continue;
    auto node = query_node(s, e, labeler);
    auto topic = std::find_if(tree.roots.begin(), tree.roots.end(),
                              [&](const TopicNode& t) { return t.topic == node.topic; });
    if (topic == tree.roots.end()) {
      tree.roots.push_back({topic_node_id(node.topic), node.topic, {}});
      topic = std::prev(tree.roots.end());
    }
    auto lang = std::find_if(topic->children.begin(), topic->children.end(),
                             [&](const LanguageNode& l) { return l.language == node.language; });
    if (lang == topic->children.end()) {
      const auto tag = pair.tag(node.language.side);
      lang = topic->children.insert(
          node.language.side == Side::l1 ? topic->children.begin() : topic->children.end(),
          {language_node_id(node.topic, tag.code), tag, {}});
    }
    lang->children.push_back(std::move(node));
  }
  return tree;
}

TimelineModel build_timeline(const SearchSession& s, TopicLabeler& labeler) {
  TimelineModel t;
  std::vector<const ActivityEvent*> queries;
  for (const auto& e : s.events()) {
    if (e.kind == EventKind::query) queries.push_back(&e);
  }
  std::stable_sort(queries.begin(), queries.end(), [](const ActivityEvent* a, const ActivityEvent* b) {
    return a->timestamp != b->timestamp ? a->timestamp < b->timestamp : a->seq < b->seq;
  });
  for (const auto* e : queries) t.entries.push_back(query_node(s, *e, labeler));
  for (std::size_t i = 1; i < t.entries.size(); ++i) {
    if (!(t.entries[i].language == t.entries[i - 1].language)) t.switch_markers.push_back(i);
  }
  return t;
}

void to_json(json& j, const ActivityRef& r) {
  j = json{{"ref", r.ref}, {"kind", to_string(r.kind)}, {"text", r.text}};
  if (r.url) j["url"] = *r.url;
}

void to_json(json& j, const QueryNode& n) {
  j = json{{"id", n.query_ref},         {"query_ref", n.query_ref}, {"text", n.text},
           {"language", n.language},    {"timestamp", n.timestamp}, {"topic", n.topic},
           {"children", n.children}};
}

void to_json(json& j, const LanguageNode& n) {
  j = json{{"id", n.id}, {"language", n.language}, {"children", n.children}};
}

void to_json(json& j, const TopicNode& n) { j = json{{"id", n.id}, {"topic", n.topic}, {"children", n.children}}; }

void to_json(json& j, const SemanticTree& t) { j = json{{"roots", t.roots}}; }

void to_json(json& j, const TimelineModel& t) {
  j = json{{"entries", t.entries}, {"switch_markers", t.switch_markers}};
}

}  // namespace langscent::analytics
