#pragma once

// Session measures over the query-language sequence and gathered sources.
// Pure functions of a session snapshot.

#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/analytics/topics.hpp"
#include "langscent/core/model.hpp"

namespace langscent::metrics {

struct SessionMetrics {
  int num_queries = 0;
  int num_switches = 0;
  std::vector<int> segment_lengths;
  // Absent for sessions without queries.
  std::optional<double> engagement_span;
  std::optional<double> language_balance;
  int num_sources = 0;
  int num_topics = 0;

  friend bool operator==(const SessionMetrics&, const SessionMetrics&) = default;
};

// Query languages in event order.
std::vector<Side> query_sides(const SearchSession& s);

int count_queries(const SearchSession& s);
int count_switches(const SearchSession& s);
// Lengths of maximal same-language query runs.
std::vector<int> segment_lengths(const SearchSession& s);

// Mean over segments of n_i / n. Throws Error{undefined_metric} without queries.
double engagement_span(const SearchSession& s);
// Base-2 Shannon entropy of the query-language distribution, 0 log 0 = 0.
// Throws Error{undefined_metric} without queries.
double language_balance(const SearchSession& s);

// Distinct urls over click/save events and notes carrying a url.
int count_sources(const SearchSession& s);
// Distinct topic labels over queries that have at least one attached
// click, save or note.
int count_topics(const SearchSession& s, analytics::TopicLabeler& labeler);

SessionMetrics compute_session_metrics(const SearchSession& s, analytics::TopicLabeler& labeler);

void to_json(nlohmann::json& j, const SessionMetrics& m);

}  // namespace langscent::metrics
