#include "langscent/providers/mock.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <set>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"
#include "langscent/core/url.hpp"

namespace langscent::providers {

using nlohmann::json;

namespace {

bool is_single_han(const std::string& token) {
  const auto cps = text::decode_utf8(token);
  return cps.size() == 1 && text::is_han(cps[0]);
}

// Content tokens of a glossary phrase; a multi-character Han phrase keeps only
// its bigrams so single characters do not match unrelated documents.
std::vector<std::string> phrase_tokens(std::string_view phrase) {
  auto tokens = text::content_tokens(phrase);
  if (text::codepoint_length(phrase) > 1) std::erase_if(tokens, is_single_han);
  return tokens;
}

bool contains_sequence(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.empty()) return false;
  return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

void push_unique(std::vector<std::string>& out, std::set<std::string>& seen, const std::string& t) {
  if (seen.insert(t).second) out.push_back(t);
}

const std::array<std::string_view, 8> kEnglishSuffixes = {
    "guide", "reviews", "comparison", "tips", "overview", "examples", "history", "trends"};
const std::array<std::string_view, 8> kChineseSuffixes = {
    "指南", "评价", "比较", "技巧", "概述", "案例", "历史", "趋势"};

std::string suggestion_suffix(const std::string& language, std::size_t index) {
  const bool han = language.rfind("zh", 0) == 0;
  const auto& list = han ? kChineseSuffixes : kEnglishSuffixes;
  std::string s(list[index % list.size()]);
  if (index >= list.size()) s += " " + std::to_string(index / list.size() + 1);
  return s;
}

std::string in_language(const std::string& text, const std::string& text_language,
                        const std::string& target) {
  return text_language == target ? text : text::mark_language(target, text);
}

json summarize_batch(const GenerativeTask& task) {
  const auto& sources = task.inputs.at("sources");
  json key_points = json::array();
  if (!sources.empty()) {
    const auto& top = sources.front();
    std::string title = top.value("title", "");
    if (text::is_blank(title)) title = top.value("snippet", "");
    if (text::is_blank(title)) title = top.at("url").get<std::string>();
    if (sources.size() > 1) title += " (+" + std::to_string(sources.size() - 1) + " related)";
    json refs = json::array();
    for (const auto& s : sources) refs.push_back(s.at("url"));
    key_points.push_back({{"text", title}, {"source_refs", refs}});
  }
  return {{"key_points", key_points}};
}

json compare_summaries(const GenerativeTask& task) {
  const auto& a = task.inputs.at("summary_l1").at("key_points");
  const auto& b = task.inputs.at("summary_l2").at("key_points");
  json comparison = json::array();
  if (a.empty() || b.empty()) return {{"comparison", comparison}};
  const auto& l1 = task.output_languages[0];
  const auto& l2 = task.output_languages[1];
  const auto kp = [](const json& list, std::size_t i) {
    return list.at(i % list.size()).at("text").get<std::string>();
  };
  const auto query = [](const std::string& text, const std::string& lang) {
    return json{{"text", text}, {"language", lang}};
  };
  const std::size_t similarities = std::min<std::size_t>(2, std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < similarities; ++i) {
    comparison.push_back({{"kind", "similarity"},
                          {"text", "Both languages cover: " + kp(a, i) + " / " + kp(b, i)},
                          {"suggested_queries", json::array({query(mock_short_query(kp(a, i)), l1),
                                                             query(mock_short_query(kp(b, i)), l2)})}});
  }
  comparison.push_back(
      {{"kind", "difference"},
       {"text", "Only " + l1 + " sources emphasize: " + kp(a, 0)},
       {"suggested_queries", json::array({query(text::mark_language(l2, mock_short_query(kp(a, 0))), l2)})}});
  comparison.push_back(
      {{"kind", "difference"},
       {"text", "Only " + l2 + " sources emphasize: " + kp(b, 0)},
       {"suggested_queries", json::array({query(text::mark_language(l1, mock_short_query(kp(b, 0))), l1)})}});
  return {{"comparison", comparison}};
}

// First `count` distinct content tokens of the title, skipping lone Han
// characters, each marked with the target language.
json keywords_for_source(const GenerativeTask& task) {
  const auto target = task.inputs.at("target_language").get<std::string>();
  const auto count = task.inputs.at("count").get<std::size_t>();
  const auto title = task.inputs.at("source").at("title").get<std::string>();
  json keywords = json::array();
  std::set<std::string> seen;
  for (const auto& token : text::content_tokens(title)) {
    if (keywords.size() >= count) break;
    if (is_single_han(token) || !seen.insert(token).second) continue;
    keywords.push_back(text::mark_language(target, token));
  }
  return {{"keywords", keywords}};
}

// Candidate i takes seed i mod S; the first round is the seed itself (marked
// into the target language when needed), later rounds append a suffix.
json suggest_queries(const GenerativeTask& task) {
  const auto target = task.inputs.at("target_language").get<std::string>();
  const auto count = task.inputs.at("count").get<std::size_t>();
  const auto& seeds = task.inputs.at("seeds");
  json queries = json::array();
  std::set<std::string> seen;
  for (std::size_t i = 0; queries.size() < count && i < count * 4; ++i) {
    const auto& seed = seeds.at(i % seeds.size());
    const auto round = i / seeds.size();
    auto text = in_language(text::trim(seed.at("text").get<std::string>()),
                            seed.at("language").get<std::string>(), target);
    if (round > 0) text += " " + suggestion_suffix(target, round - 1);
    if (seen.insert(text).second) queries.push_back({{"text", text}, {"language", target}});
  }
  return {{"queries", queries}};
}

// Longest content token by codepoints; ties go to the lexicographically greatest.
json label_topic(const GenerativeTask& task) {
  const auto tokens = text::content_tokens(task.inputs.at("text").get<std::string>());
  if (tokens.empty()) throw Error(ErrorCode::degraded, "label_topic: no content tokens");
  std::string best;
  std::size_t best_len = 0;
  for (const auto& t : tokens) {
    const auto len = text::codepoint_length(t);
    if (len > best_len || (len == best_len && t > best)) {
      best = t;
      best_len = len;
    }
  }
  return {{"topic", best}};
}

// Multiset difference and intersection over content tokens, reported as
// distinct tokens in target order.
json compare_marginal(const GenerativeTask& task) {
  std::map<std::string, int> base;
  for (const auto& s : task.inputs.at("base")) {
    for (const auto& t : text::content_tokens(s.get<std::string>())) ++base[t];
  }
  std::map<std::string, int> target;
  std::vector<std::string> order;
  for (const auto& s : task.inputs.at("target")) {
    for (const auto& t : text::content_tokens(s.get<std::string>())) {
      if (target[t]++ == 0) order.push_back(t);
    }
  }
  json fresh = json::array();
  json overlap = json::array();
  for (const auto& t : order) {
    const int in_base = base.contains(t) ? base.at(t) : 0;
    if (target.at(t) > in_base) fresh.push_back(t);
    if (in_base > 0) overlap.push_back(t);
  }
  return {{"new_points", fresh}, {"overlapping_points", overlap}};
}

}  // namespace

MockCorpus::MockCorpus(std::vector<CorpusDocument> documents, std::vector<GlossaryEntry> glossary)
    : documents_(std::move(documents)), glossary_(std::move(glossary)) {}

MockCorpus MockCorpus::load(const std::filesystem::path& corpus, const std::filesystem::path& glossary) {
  std::ifstream in(corpus);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open corpus " + corpus.string());
  std::vector<CorpusDocument> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_blank(line)) continue;
    try {
      const auto j = json::parse(line);
      docs.push_back({normalize_url(j.at("url").get<std::string>()), j.at("title").get<std::string>(),
                      j.at("snippet").get<std::string>(), j.at("language").get<std::string>()});
    } catch (const json::exception& e) {
      throw Error(ErrorCode::invalid_input,
                  corpus.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }

  std::vector<GlossaryEntry> entries;
  if (!glossary.empty()) {
    std::ifstream gin(glossary);
    if (!gin) throw Error(ErrorCode::invalid_input, "cannot open glossary " + glossary.string());
    try {
      const auto g = json::parse(gin);
      for (const auto& [term, value] : g.items()) {
        if (value.is_string()) {
          entries.push_back({text::to_lower(term), value.get<std::string>()});
        } else {
          for (const auto& v : value) entries.push_back({text::to_lower(term), v.get<std::string>()});
        }
      }
    } catch (const json::exception& e) {
      throw Error(ErrorCode::invalid_input, glossary.string() + ": " + e.what());
    }
  }
  return MockCorpus(std::move(docs), std::move(entries));
}

std::vector<std::string> MockCorpus::expanded_terms(std::string_view query) const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  const auto base = text::strip_leading_marker(query);
  for (const auto& t : text::content_tokens(base)) push_unique(out, seen, t);

  const auto query_tokens = text::tokenize(base);
  const auto lowered = text::to_lower(base);
  for (const auto& entry : glossary_) {
    if (contains_sequence(query_tokens, text::tokenize(entry.term))) {
      for (const auto& t : phrase_tokens(entry.translation)) push_unique(out, seen, t);
    }
    if (lowered.find(entry.translation) != std::string::npos) {
      for (const auto& t : phrase_tokens(entry.term)) push_unique(out, seen, t);
    }
  }
  return out;
}

std::vector<SearchHit> MockSearchProvider::search(std::string_view query, std::string_view language_code,
                                                  int n) {
  const auto terms = corpus_->expanded_terms(query);
  const std::set<std::string> term_set(terms.begin(), terms.end());

  struct Scored {
    int score;
    const CorpusDocument* doc;
  };
  std::vector<Scored> scored;
  for (const auto& doc : corpus_->documents()) {
    if (doc.language != language_code) continue;
    const auto tokens = text::content_tokens(doc.title + " " + doc.snippet);
    const std::set<std::string> doc_terms(tokens.begin(), tokens.end());
    int score = 0;
    for (const auto& t : term_set) score += doc_terms.contains(t) ? 1 : 0;
    if (score > 0) scored.push_back({score, &doc});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.score != b.score ? a.score > b.score : a.doc->url < b.doc->url;
  });
  std::vector<SearchHit> hits;
  for (const auto& s : scored) {
    if (static_cast<int>(hits.size()) >= n) break;
    hits.push_back({s.doc->url, s.doc->title, s.doc->snippet});
  }
  return hits;
}

std::string MockTranslationProvider::translate(std::string_view text, std::string_view source_code,
                                               std::string_view target_code) {
  if (const auto marker = text::leading_marker(text); marker && *marker == source_code) {
    return text::strip_leading_marker(text);
  }
  return text::mark_language(target_code, text);
}

std::string MockTranslationProvider::detect(std::string_view text, std::span<const std::string> candidates) {
  if (candidates.empty()) throw Error(ErrorCode::invalid_input, "detect needs candidate languages");
  if (const auto marker = text::leading_marker(text)) {
    for (const auto& c : candidates) {
      if (c == *marker) return c;
    }
  }
  const bool han_text = han_ratio(text) >= 0.3;
  for (const auto& c : candidates) {
    if (is_han_language(c) == han_text) return c;
  }
  return candidates.front();
}

MockEmbeddingProvider::MockEmbeddingProvider(int dimension) : dimension_(dimension) {
  if (dimension_ < 2) throw Error(ErrorCode::invalid_input, "embedding dimension must be >= 2");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

EmbeddingVector MockEmbeddingProvider::embed(std::string_view text_in) {
  if (text_in.empty()) throw Error(ErrorCode::invalid_input, "cannot embed empty text");
  const auto cps = text::decode_utf8(text::to_lower(text_in));
  std::vector<double> buckets(static_cast<std::size_t>(dimension_), 0.0);
  const auto add = [&](std::u32string_view gram) {
    buckets[fnv1a64(text::encode_utf8(gram)) % buckets.size()] += 1.0;
  };
  if (cps.size() < 3) {
    add(cps);
  } else {
    for (std::size_t i = 0; i + 3 <= cps.size(); ++i) add(std::u32string_view(cps).substr(i, 3));
  }
  return l2_normalize(std::move(buckets));
}

json MockGenerativeProvider::generate(const GenerativeTask& task) {
  switch (task.kind) {
    case TaskKind::summarize_batch: return summarize_batch(task);
    case TaskKind::compare_summaries: return compare_summaries(task);
    case TaskKind::keywords_for_source: return keywords_for_source(task);
    case TaskKind::suggest_queries: return suggest_queries(task);
    case TaskKind::label_topic: return label_topic(task);
    case TaskKind::compare_marginal: return compare_marginal(task);
  }
  throw Error(ErrorCode::internal, "unknown task kind");
}

std::string mock_short_query(std::string_view text_in) {
  std::string s = text::strip_leading_marker(text_in);
  if (const auto pos = s.find(" (+"); pos != std::string::npos) s.resize(pos);
  auto out = text::headline(s);
  return out.empty() ? text::trim(s) : out;
}

}  // namespace langscent::providers
