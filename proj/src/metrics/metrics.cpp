#include "langscent/metrics/metrics.hpp"

#include <cmath>
#include <set>

#include "langscent/core/error.hpp"

namespace langscent::metrics {

using nlohmann::json;

std::vector<Side> query_sides(const SearchSession& s) {
  std::vector<Side> out;
  for (const auto& e : s.events()) {
    if (const auto* q = e.as_query()) out.push_back(q->language.side);
  }
  return out;
}

int count_queries(const SearchSession& s) { return static_cast<int>(query_sides(s).size()); }

int count_switches(const SearchSession& s) {
  const auto sides = query_sides(s);
  int n = 0;
  for (std::size_t i = 1; i < sides.size(); ++i) n += sides[i] != sides[i - 1] ? 1 : 0;
  return n;
}

std::vector<int> segment_lengths(const SearchSession& s) {
  std::vector<int> out;
  const auto sides = query_sides(s);
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (i == 0 || sides[i] != sides[i - 1]) out.push_back(0);
    ++out.back();
  }
  return out;
}

double engagement_span(const SearchSession& s) {
  const auto segments = segment_lengths(s);
  if (segments.empty()) throw Error(ErrorCode::undefined_metric, "engagement_span needs at least one query");
  double n = 0.0;
  for (int len : segments) n += len;
  double sum = 0.0;
  for (int len : segments) sum += len / n;
  return sum / static_cast<double>(segments.size());
}

double language_balance(const SearchSession& s) {
  const auto sides = query_sides(s);
  if (sides.empty()) throw Error(ErrorCode::undefined_metric, "language_balance needs at least one query");
  double counts[2] = {0.0, 0.0};
  for (auto side : sides) counts[side == Side::l1 ? 0 : 1] += 1.0;
  const double n = static_cast<double>(sides.size());
  double h = 0.0;
  for (double c : counts) {
    if (c == 0.0) continue;
    const double p = c / n;
    h -= p * std::log2(p);
  }
  return h;
}

int count_sources(const SearchSession& s) {
  std::set<std::string> urls;
  for (const auto& e : s.events()) {
    if (const auto* src = e.as_source()) {
      urls.insert(src->url);
    } else if (const auto* note = e.as_note(); note != nullptr && note->url && !s.is_superseded(e.id)) {
      urls.insert(*note->url);
    }
  }
  return static_cast<int>(urls.size());
}

int count_topics(const SearchSession& s, analytics::TopicLabeler& labeler) {
  std::set<std::string> topics;
  for (const auto& q : s.queries()) {
    if (s.attachments(q.id).empty()) continue;
    topics.insert(labeler.assign_topic(q));
  }
  return static_cast<int>(topics.size());
}

SessionMetrics compute_session_metrics(const SearchSession& s, analytics::TopicLabeler& labeler) {
  SessionMetrics m;
  m.segment_lengths = segment_lengths(s);
  for (int len : m.segment_lengths) m.num_queries += len;
  m.num_switches = m.segment_lengths.empty() ? 0 : static_cast<int>(m.segment_lengths.size()) - 1;
  if (m.num_queries > 0) {
    m.engagement_span = engagement_span(s);
    m.language_balance = language_balance(s);
  }
  m.num_sources = count_sources(s);
  m.num_topics = count_topics(s, labeler);
  return m;
}

void to_json(json& j, const SessionMetrics& m) {
  j = json{{"num_queries", m.num_queries},
           {"num_switches", m.num_switches},
           {"segment_lengths", m.segment_lengths},
           {"engagement_span", m.engagement_span ? json(*m.engagement_span) : json(nullptr)},
           {"language_balance", m.language_balance ? json(*m.language_balance) : json(nullptr)},
           {"num_sources", m.num_sources},
           {"num_topics", m.num_topics}};
}

}  // namespace langscent::metrics
