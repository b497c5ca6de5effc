#include "langscent/analytics/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "langscent/analytics/views.hpp"
#include "langscent/core/classify.hpp"
#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"
#include "langscent/index/activity_index.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::analytics {

using nlohmann::json;

namespace {

inline constexpr std::size_t kSuggestionsPerLanguage = 3;

void add_query_closure(const SearchSession& s, const std::string& query_id, std::set<std::uint64_t>& out) {
  out.insert(s.find(query_id)->seq);
  for (const auto* a : s.attachments(query_id)) out.insert(a->seq);
}

// Language a selected event is filed under: its own for queries, its query's
// for attachments, the classifier's for free-standing notes.
LanguageTag event_language(const providers::Providers& p, const SearchSession& s, const ActivityEvent& e) {
  if (const auto* q = e.as_query()) return q->language;
  if (e.query_ref) {
    if (const auto* q = s.find(*e.query_ref); q != nullptr && q->as_query() != nullptr) {
      return q->as_query()->language;
    }
  }
  return classify_language(index::item_text(e), s.language_pair(), p.translation.get());
}

providers::SearchHit as_source(const ActivityEvent& e) {
  providers::SearchHit hit{"activity:" + e.id, "", ""};
  if (const auto* q = e.as_query()) {
    hit.title = q->text;
  } else if (const auto* src = e.as_source()) {
    hit.title = src->title.empty() ? src->url : src->title;
    hit.snippet = src->snippet;
  } else if (const auto* note = e.as_note()) {
    hit.title = note->body;
  }
  return hit;
}

std::vector<std::string> selection_texts(const std::vector<const ActivityEvent*>& events) {
  std::vector<std::string> out;
  for (const auto* e : events) {
    auto t = index::item_text(*e);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> distinct(const json& list) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& v : list) {
    auto s = v.get<std::string>();
    if (seen.insert(s).second) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<const ActivityEvent*> resolve_selection(const SearchSession& s, TopicLabeler& labeler,
                                                    const std::vector<std::string>& node_ids) {
  if (node_ids.empty()) throw Error(ErrorCode::invalid_input, "select at least one node");
  const auto tree = build_semantic_tree(s, labeler);
  std::set<std::uint64_t> seqs;
  for (const auto& id : node_ids) {
    bool found = false;
    for (const auto& topic : tree.roots) {
      for (const auto& lang : topic.children) {
        if (topic.id != id && lang.id != id) continue;
        found = true;
        for (const auto& q : lang.children) add_query_closure(s, q.query_ref, seqs);
      }
    }
    if (found) continue;
    const auto* e = s.find(id);
    if (e == nullptr) throw Error(ErrorCode::invalid_selection, "unknown node " + id);
    if (e->kind == EventKind::query) {
      add_query_closure(s, e->id, seqs);
    } else {
      seqs.insert(e->seq);
    }
  }
  std::vector<const ActivityEvent*> out;
  for (const auto& e : s.events()) {
    if (seqs.contains(e.seq)) out.push_back(&e);
  }
  return out;
}

SummarizeReport analyze_summarize(const providers::Providers& p, const SearchSession& s, TopicLabeler& labeler,
                                  const std::vector<std::string>& node_ids) {
  const auto events = resolve_selection(s, labeler, node_ids);
  const auto& pair = s.language_pair();
  std::map<Side, std::vector<providers::SearchHit>> by_side;
  for (const auto* e : events) {
    if (index::item_text(*e).empty()) continue;
    by_side[event_language(p, s, *e).side].push_back(as_source(*e));
  }

  SummarizeReport report;
  std::map<Side, LanguageSummary> summaries;
  for (const auto& [side, sources] : by_side) {
    const auto tag = pair.tag(side);
    const auto out = providers::generate(p, providers::summarize_batch_task(tag.code, sources));
    LanguageSummary summary{tag, {}};
    for (const auto& kp : out.at("key_points")) {
      summary.key_points.push_back(
          {kp.at("text").get<std::string>(), kp.at("source_refs").get<std::vector<std::string>>(), false});
      if (!report.overview.empty()) report.overview += "\n";
      report.overview += summary.key_points.back().text;
    }
    summaries.emplace(side, std::move(summary));
  }

  if (summaries.size() == 2) {
    const auto out = providers::generate(
        p, providers::compare_summaries_task(json(summaries.at(Side::l1)), json(summaries.at(Side::l2)), pair.l1,
                                             pair.l2));
    for (const auto& item : out.at("comparison")) {
      report.cross_language_comparison.push_back(item.at("text").get<std::string>());
    }
  }
  return report;
}

ComparisonReport analyze_compare(const providers::Providers& p, const SearchSession& s, TopicLabeler& labeler,
                                 const std::string& base, const std::string& target) {
  if (base == target) throw Error(ErrorCode::invalid_input, "compare needs two different nodes");
  const auto base_texts = selection_texts(resolve_selection(s, labeler, {base}));
  const auto target_texts = selection_texts(resolve_selection(s, labeler, {target}));
  const auto out = providers::generate(p, providers::compare_marginal_task(base_texts, target_texts));

  ComparisonReport report{base, target, {}, distinct(out.at("overlapping_points"))};
  const std::set<std::string> overlap(report.overlapping_points.begin(), report.overlapping_points.end());
  for (auto& point : distinct(out.at("new_points"))) {
    if (!overlap.contains(point)) report.new_points.push_back(std::move(point));
  }
  return report;
}

std::vector<SuggestedQuery> analyze_suggest(const providers::Providers& p, const SearchSession& s,
                                            TopicLabeler& labeler, const std::vector<std::string>& node_ids) {
  const auto events = resolve_selection(s, labeler, node_ids);
  const auto& pair = s.language_pair();

  std::vector<providers::SeedQuery> seeds;
  for (const auto* e : events) {
    if (const auto* q = e->as_query()) seeds.push_back({q->text, q->language.code});
  }
  if (seeds.empty()) {
    for (const auto* e : events) {
      auto t = index::item_text(*e);
      if (t.empty()) continue;
      seeds.push_back({text::headline(t), event_language(p, s, *e).code});
    }
  }
  if (seeds.empty()) throw Error(ErrorCode::invalid_selection, "selection has no text to extend");

  std::set<std::string> existing;
  const auto queries = s.queries();
  for (const auto& q : queries) existing.insert(text::to_lower(text::trim(q.text)));

  std::vector<SuggestedQuery> out;
  for (const auto side : {Side::l1, Side::l2}) {
    const auto tag = pair.tag(side);
    const auto count = static_cast<int>(kSuggestionsPerLanguage + queries.size());
    const auto generated = providers::generate(p, providers::suggest_queries_task(seeds, tag.code, count));
    std::size_t kept = 0;
    for (const auto& q : generated.at("queries")) {
      if (kept == kSuggestionsPerLanguage) break;
      auto t = text::trim(q.at("text").get<std::string>());
      if (!existing.insert(text::to_lower(t)).second) continue;
      out.push_back({std::move(t), tag});
      ++kept;
    }
    if (kept == 0) throw Error(ErrorCode::degraded, "no new suggestions in " + tag.code);
  }
  return out;
}

void to_json(json& j, const SummarizeReport& r) {
  j = json{{"overview", r.overview}, {"cross_language_comparison", r.cross_language_comparison}};
}

void to_json(json& j, const ComparisonReport& r) {
  j = json{{"base_ref", r.base_ref},
           {"target_ref", r.target_ref},
           {"new_points", r.new_points},
           {"overlapping_points", r.overlapping_points}};
}

}  // namespace langscent::analytics
