#include "langscent/pipeline/search_pipeline.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>

#include "langscent/core/classify.hpp"
#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::pipeline {

using nlohmann::json;

namespace {

struct Branch {
  std::vector<SourceResult> batch;
  LanguageSummary summary;
};

Branch run_branch(const providers::Providers& p, std::string_view query_text, const LanguageTag& language) {
  Branch b;
  b.batch = dedupe_by_url(providers::search(p, query_text, language, p.config.results_per_language));
  const auto clusters = cluster_batch(p, b.batch);
  b.summary = summarize_language(p, clusters, b.batch, language);
  return b;
}

KeyPoint fallback_point(const SourceResult& top) {
  return {top.title.empty() ? top.url : top.title, {top.url}, true};
}

std::vector<SuggestedQuery> parse_suggestions(const json& list, const LanguagePair& pair) {
  std::vector<SuggestedQuery> out;
  for (const auto& q : list) {
    out.push_back({q.at("text").get<std::string>(), pair.resolve_or_throw(q.at("language").get<std::string>())});
  }
  return out;
}

std::vector<ComparisonPoint> one_sided(const providers::Providers& p, const LanguagePair& pair,
                                       const LanguageSummary& covered) {
  std::vector<ComparisonPoint> out;
  const auto missing = pair.other(covered.language);
  for (const auto& kp : covered.key_points) {
    ComparisonPoint point;
    point.kind = ComparisonKind::difference;
    point.text = "Only " + covered.language.code + " sources cover: " + kp.text;
    auto query = text::headline(kp.text);
    if (query.empty()) query = kp.text;
    point.suggested_queries.push_back({query, covered.language});
    try {
      point.suggested_queries.push_back({providers::translate(p, query, covered.language, missing), missing});
    } catch (const Error&) {
      // translation is best-effort here
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace

QueryInfo rewrite_query(const providers::Providers& p, const Query& q, const LanguageTag& target) {
  if (target == q.language) throw Error(ErrorCode::invalid_input, "rewrite target must differ from query language");
  const auto raw = providers::translate(p, q.text, q.language, target);
  QueryInfo info{q, {raw, target}, std::string(provenance::kRawTranslation)};
  try {
    const auto out =
        providers::generate(p, providers::suggest_queries_task({{raw, target.code}}, target.code, 1));
    info.rewritten_other.text = text::trim(out.at("queries").at(0).at("text").get<std::string>());
    info.provenance = std::string(provenance::kRewritten);
  } catch (const Error&) {
    // keep the raw translation
  }
  return info;
}

LanguageSummary summarize_language(const providers::Providers& p, std::span<const Cluster> clusters,
                                   std::span<const SourceResult> batch, const LanguageTag& language) {
  std::map<std::string, const SourceResult*> by_url;
  for (const auto& r : batch) by_url.emplace(r.url, &r);

  LanguageSummary summary{language, {}};
  for (const auto& cluster : clusters) {
    if (cluster.language != language) throw Error(ErrorCode::invalid_input, "cluster language mismatch");
    std::vector<providers::SearchHit> sources;
    const SourceResult* top = nullptr;
    for (const auto& url : cluster.member_urls) {
      const auto it = by_url.find(url);
      if (it == by_url.end()) throw Error(ErrorCode::invalid_input, "cluster member " + url + " not in batch");
      sources.push_back({url, it->second->title, it->second->snippet});
      if (top == nullptr || it->second->rank < top->rank) top = it->second;
    }
    if (top == nullptr) continue;
    try {
      const auto out = providers::generate(p, providers::summarize_batch_task(language.code, sources));
      const std::set<std::string> members(cluster.member_urls.begin(), cluster.member_urls.end());
      const auto& kps = out.at("key_points");
      if (kps.empty()) {
        summary.key_points.push_back(fallback_point(*top));
        continue;
      }
      // One point per cluster: the first, restricted to this cluster's members.
      KeyPoint kp{kps.at(0).at("text").get<std::string>(), {}, false};
      for (const auto& ref : kps.at(0).at("source_refs")) {
        const auto url = ref.get<std::string>();
        if (members.contains(url)) kp.source_refs.push_back(url);
      }
      summary.key_points.push_back(kp.source_refs.empty() ? fallback_point(*top) : std::move(kp));
    } catch (const Error&) {
      summary.key_points.push_back(fallback_point(*top));
    }
  }
  return summary;
}

std::vector<ComparisonPoint> build_comparison(const providers::Providers& p, const LanguagePair& pair,
                                              const LanguageSummary& summary_l1,
                                              const LanguageSummary& summary_l2) {
  const bool has1 = !summary_l1.key_points.empty();
  const bool has2 = !summary_l2.key_points.empty();
  if (!has1 && !has2) return {};
  if (!has1) return one_sided(p, pair, summary_l2);
  if (!has2) return one_sided(p, pair, summary_l1);

  const auto out = providers::generate(
      p, providers::compare_summaries_task(json(summary_l1), json(summary_l2), pair.l1, pair.l2));
  std::vector<ComparisonPoint> points;
  for (const auto& item : out.at("comparison")) {
    ComparisonPoint point;
    point.kind = item.at("kind") == "similarity" ? ComparisonKind::similarity : ComparisonKind::difference;
    point.text = item.at("text").get<std::string>();
    point.suggested_queries = parse_suggestions(item.at("suggested_queries"), pair);
    points.push_back(std::move(point));
  }
  return points;
}

std::vector<SourceResult> decorate_keywords(const providers::Providers& p, const LanguagePair& pair,
                                            std::vector<SourceResult> results, const LanguageTag& other, int k) {
  const bool script_checkable = is_han_language(pair.l1) != is_han_language(pair.l2);
  for (auto& r : results) {
    r.keywords_other_language.clear();
    if (k <= 0) continue;
    if (r.language == other) throw Error(ErrorCode::invalid_input, "keywords must target the other language");
    try {
      const auto out = providers::generate(
          p, providers::keywords_for_source_task({r.url, r.title, r.snippet}, r.language.code, other.code, k));
      for (const auto& kw : out.at("keywords")) {
        auto word = text::trim(kw.get<std::string>());
        if (script_checkable && !(classify_language(word, pair) == other)) continue;
        r.keywords_other_language.push_back(std::move(word));
      }
    } catch (const Error&) {
      r.keywords_other_language.clear();
    }
  }
  return results;
}

std::vector<SourceResult> dedupe_by_url(std::vector<SourceResult> results) {
  std::set<std::string> seen;
  std::erase_if(results, [&](const SourceResult& r) { return !seen.insert(r.url).second; });
  return results;
}

SearchResponse run_bilingual_search(const providers::Providers& p, const LanguagePair& pair, const Query& q) {
  if (text::is_blank(q.text)) throw Error(ErrorCode::invalid_input, "query text must be non-empty");
  const auto same = q.language;
  const auto other = pair.other(same);

  struct OtherOutcome {
    QueryInfo info;
    Branch branch;
    std::string failure;
  };

  auto other_future = std::async(std::launch::async, [&]() {
    OtherOutcome o;
    o.info = QueryInfo{q, {"", other}, std::string(provenance::kUnavailable)};
    try {
      o.info = rewrite_query(p, q, other);
      o.branch = run_branch(p, o.info.rewritten_other.text, other);
    } catch (const Error& e) {
      o.failure = e.what();
    }
    return o;
  });

  Branch same_branch;
  try {
    same_branch = run_branch(p, q.text, same);
    same_branch.batch = decorate_keywords(p, pair, std::move(same_branch.batch), other, p.config.keyword_count);
  } catch (...) {
    other_future.wait();
    throw;
  }
  auto other_outcome = other_future.get();

  SearchResponse response;
  response.query_info = std::move(other_outcome.info);
  response.results = std::move(same_branch.batch);
  std::stable_sort(response.results.begin(), response.results.end(),
                   [](const SourceResult& a, const SourceResult& b) { return a.rank < b.rank; });

  LanguageSummary other_summary = other_outcome.failure.empty() ? std::move(other_outcome.branch.summary)
                                                                : LanguageSummary{other, {}};
  auto& s1 = response.comparative_summary.summary_l1;
  auto& s2 = response.comparative_summary.summary_l2;
  if (same.side == Side::l1) {
    s1 = std::move(same_branch.summary);
    s2 = std::move(other_summary);
  } else {
    s1 = std::move(other_summary);
    s2 = std::move(same_branch.summary);
  }

  if (!other_outcome.failure.empty()) {
    response.degraded = true;
    response.warnings.push_back("other language unavailable: " + other_outcome.failure);
    return response;
  }
  try {
    response.comparative_summary.comparison = build_comparison(p, pair, s1, s2);
  } catch (const Error& e) {
    response.warnings.push_back(std::string("comparison unavailable: ") + e.what());
  }
  return response;
}

}  // namespace langscent::pipeline
