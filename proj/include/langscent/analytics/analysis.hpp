#pragma once

// Summarize, Compare and Suggest over nodes selected in the side panel. A
// selected topic or language node stands for all queries beneath it; a query
// node includes its clicks, saves and notes.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/analytics/topics.hpp"
#include "langscent/core/model.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::analytics {

// Events covered by the selection, in seq order. Unknown ids throw
// Error{invalid_selection}; an empty selection throws Error{invalid_input}.
std::vector<const ActivityEvent*> resolve_selection(const SearchSession& s, TopicLabeler& labeler,
                                                    const std::vector<std::string>& node_ids);

struct SummarizeReport {
  std::string overview;
  std::vector<std::string> cross_language_comparison;
};

struct ComparisonReport {
  std::string base_ref;
  std::string target_ref;
  std::vector<std::string> new_points;
  std::vector<std::string> overlapping_points;
};

SummarizeReport analyze_summarize(const providers::Providers& p, const SearchSession& s, TopicLabeler& labeler,
                                  const std::vector<std::string>& node_ids);

// Directional: what target adds relative to base. new_points and
// overlapping_points are disjoint.
ComparisonReport analyze_compare(const providers::Providers& p, const SearchSession& s, TopicLabeler& labeler,
                                 const std::string& base, const std::string& target);

// At least one suggestion per language, none equal (case-folded) to an
// existing session query. Throws Error{degraded} when that cannot be met.
std::vector<SuggestedQuery> analyze_suggest(const providers::Providers& p, const SearchSession& s,
                                            TopicLabeler& labeler, const std::vector<std::string>& node_ids);

void to_json(nlohmann::json& j, const SummarizeReport& r);
void to_json(nlohmann::json& j, const ComparisonReport& r);

}  // namespace langscent::analytics
