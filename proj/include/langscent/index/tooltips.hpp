#pragma once

// The two selection tooltips: contextual translation with related history,
// and a preview of what the other language would offer.

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/core/model.hpp"
#include "langscent/index/activity_index.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::index {

inline constexpr int kRelatedTopK = 5;
inline constexpr int kPreviewQueries = 3;
inline constexpr int kPreviewSources = 5;

struct ContextualTranslation {
  std::string translation;
  LanguageTag target;
  std::vector<RetrievalHit> related;
  // Set when retrieval failed and `related` is empty for that reason.
  bool retrieval_failed = false;
  std::vector<std::string> warnings;
};

// Translation failure throws; retrieval failure is reported in the result.
ContextualTranslation contextual_translate(const providers::Providers& p, const ActivityIndex& index,
                                           std::string_view selection, const LanguageTag& source_language,
                                           int top_k = kRelatedTopK);

struct OtherLanguagePreview {
  std::vector<SuggestedQuery> suggested_queries;
  std::vector<SourceResult> sources;
  bool search_failed = false;
  std::vector<std::string> warnings;
};

// Suggestions seeded by the translated selection, and search results for the
// top suggestion. Nothing is recorded in the session.
OtherLanguagePreview preview_other_language(const providers::Providers& p, const LanguagePair& pair,
                                            std::string_view selection, const LanguageTag& source_language,
                                            int num_queries = kPreviewQueries, int num_sources = kPreviewSources);

void to_json(nlohmann::json& j, const ContextualTranslation& t);
void to_json(nlohmann::json& j, const OtherLanguagePreview& p);

}  // namespace langscent::index
