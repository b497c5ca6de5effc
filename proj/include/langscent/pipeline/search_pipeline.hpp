#pragma once

// Bilingual search: rewrite the query into the other language, retrieve both
// batches, cluster and summarize each, compare the two summaries and decorate
// the query-language results with other-language keywords.

#include <span>
#include <vector>

#include "langscent/core/model.hpp"
#include "langscent/pipeline/clustering.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::pipeline {

// Translation followed by a single-query suggest_queries rewrite. A failed
// rewrite falls back to the raw translation (provenance translate-only); a
// failed translation propagates.
QueryInfo rewrite_query(const providers::Providers& p, const Query& q, const LanguageTag& target);

// One key point per cluster, in cluster order. A cluster whose summary fails
// (or cites urls outside the cluster) gets its top-ranked member title as a
// flagged fallback.
LanguageSummary summarize_language(const providers::Providers& p, std::span<const Cluster> clusters,
                                   std::span<const SourceResult> batch, const LanguageTag& language);

// Cross-lingual comparison points. Both summaries empty gives nothing; one
// empty side gives "difference" points describing one-sided coverage.
std::vector<ComparisonPoint> build_comparison(const providers::Providers& p, const LanguagePair& pair,
                                              const LanguageSummary& summary_l1,
                                              const LanguageSummary& summary_l2);

// Fills keywords_other_language with at most k keywords per result. A failing
// source keeps an empty list; result order is unchanged.
std::vector<SourceResult> decorate_keywords(const providers::Providers& p, const LanguagePair& pair,
                                            std::vector<SourceResult> results, const LanguageTag& other, int k);

// Keeps the first occurrence of every url.
std::vector<SourceResult> dedupe_by_url(std::vector<SourceResult> results);

// Runs both language branches concurrently and assembles the response in fixed
// order. A failing other-language branch degrades the response to monolingual;
// a failing same-language branch throws.
SearchResponse run_bilingual_search(const providers::Providers& p, const LanguagePair& pair, const Query& q);

}  // namespace langscent::pipeline
