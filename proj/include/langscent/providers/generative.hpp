#pragma once

// Typed surface for every LLM-backed step. Each task kind fixes an input and
// an output shape:
//
//   summarize_batch     {language, sources:[{url,title,snippet}]}
//                       -> {key_points:[{text, source_refs:[url]}]}
//   compare_summaries   {summary_l1, summary_l2}   (LanguageSummary JSON)
//                       -> {comparison:[{kind, text, suggested_queries:[{text,language}]}]}
//   keywords_for_source {source:{url,title,snippet,language}, target_language, count}
//                       -> {keywords:[string]}
//   suggest_queries     {seeds:[{text,language}], target_language, count}
//                       -> {queries:[{text,language}]}
//   label_topic         {text} -> {topic}
//   compare_marginal    {base:[string], target:[string]}
//                       -> {new_points:[string], overlapping_points:[string]}

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/providers/interfaces.hpp"

namespace langscent::providers {

struct SeedQuery {
  std::string text;
  std::string language;
};

GenerativeTask summarize_batch_task(const std::string& language, const std::vector<SearchHit>& sources);
GenerativeTask compare_summaries_task(const nlohmann::json& summary_l1, const nlohmann::json& summary_l2,
                                      const std::string& l1, const std::string& l2);
GenerativeTask keywords_for_source_task(const SearchHit& source, const std::string& source_language,
                                        const std::string& target_language, int count);
GenerativeTask suggest_queries_task(const std::vector<SeedQuery>& seeds,
                                    const std::string& target_language, int count);
GenerativeTask label_topic_task(const std::string& text);
GenerativeTask compare_marginal_task(const std::vector<std::string>& base,
                                     const std::vector<std::string>& target);

// Throws Error{invalid_input}.
void validate_task_inputs(const GenerativeTask& task);

// Throws Error{degraded} naming the first violation.
void validate_task_output(const GenerativeTask& task, const nlohmann::json& output);

// JSON shape description handed to live models.
std::string output_contract(TaskKind kind);

}  // namespace langscent::providers
