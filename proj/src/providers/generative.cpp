#include "langscent/providers/generative.hpp"

#include <algorithm>
#include <set>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"

namespace langscent::providers {

using nlohmann::json;

namespace {

[[noreturn]] void bad_input(TaskKind kind, const std::string& why) {
  throw Error(ErrorCode::invalid_input, std::string(to_string(kind)) + " inputs: " + why);
}

[[noreturn]] void bad_output(TaskKind kind, const std::string& why, const json& output) {
  throw Error(ErrorCode::degraded, std::string(to_string(kind)) + " output: " + why, output.dump());
}

bool nonblank_string(const json& j) {
  return j.is_string() && !text::is_blank(j.get_ref<const std::string&>());
}

bool string_array(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_string(); });
}

const json* member(const json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

bool has_key_points(const json& summary) {
  const auto* kp = member(summary, "key_points");
  return kp != nullptr && kp->is_array() && !kp->empty();
}

bool valid_suggestion(const json& q) {
  const auto* t = member(q, "text");
  const auto* l = member(q, "language");
  return t != nullptr && nonblank_string(*t) && l != nullptr && l->is_string();
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::summarize_batch: return "summarize_batch";
    case TaskKind::compare_summaries: return "compare_summaries";
    case TaskKind::keywords_for_source: return "keywords_for_source";
    case TaskKind::suggest_queries: return "suggest_queries";
    case TaskKind::label_topic: return "label_topic";
    case TaskKind::compare_marginal: return "compare_marginal";
  }
  return "label_topic";
}

GenerativeTask summarize_batch_task(const std::string& language, const std::vector<SearchHit>& sources) {
  json items = json::array();
  for (const auto& s : sources) items.push_back({{"url", s.url}, {"title", s.title}, {"snippet", s.snippet}});
  return {TaskKind::summarize_batch, {{"language", language}, {"sources", std::move(items)}}, {language}};
}

GenerativeTask compare_summaries_task(const json& summary_l1, const json& summary_l2,
                                      const std::string& l1, const std::string& l2) {
  return {TaskKind::compare_summaries, {{"summary_l1", summary_l1}, {"summary_l2", summary_l2}}, {l1, l2}};
}

GenerativeTask keywords_for_source_task(const SearchHit& source, const std::string& source_language,
                                        const std::string& target_language, int count) {
  json src = {{"url", source.url}, {"title", source.title}, {"snippet", source.snippet},
              {"language", source_language}};
  return {TaskKind::keywords_for_source,
          {{"source", std::move(src)}, {"target_language", target_language}, {"count", count}},
          {target_language}};
}

GenerativeTask suggest_queries_task(const std::vector<SeedQuery>& seeds, const std::string& target_language,
                                    int count) {
  json items = json::array();
  for (const auto& s : seeds) items.push_back({{"text", s.text}, {"language", s.language}});
  return {TaskKind::suggest_queries,
          {{"seeds", std::move(items)}, {"target_language", target_language}, {"count", count}},
          {target_language}};
}

GenerativeTask label_topic_task(const std::string& text) {
  return {TaskKind::label_topic, {{"text", text}}, {}};
}

GenerativeTask compare_marginal_task(const std::vector<std::string>& base, const std::vector<std::string>& target) {
  return {TaskKind::compare_marginal, {{"base", base}, {"target", target}}, {}};
}

void validate_task_inputs(const GenerativeTask& task) {
  const auto& in = task.inputs;
  if (!in.is_object() || in.empty()) bad_input(task.kind, "must be a non-empty object");
  switch (task.kind) {
    case TaskKind::summarize_batch: {
      const auto* lang = member(in, "language");
      const auto* sources = member(in, "sources");
      if (lang == nullptr || !lang->is_string()) bad_input(task.kind, "language required");
      if (sources == nullptr || !sources->is_array()) bad_input(task.kind, "sources must be an array");
      for (const auto& s : *sources) {
        const auto* url = member(s, "url");
        const auto* title = member(s, "title");
        if (url == nullptr || !nonblank_string(*url) || title == nullptr || !title->is_string()) {
          bad_input(task.kind, "each source needs url and title");
        }
      }
      break;
    }
    case TaskKind::compare_summaries:
      if (member(in, "summary_l1") == nullptr || member(in, "summary_l2") == nullptr) {
        bad_input(task.kind, "summary_l1 and summary_l2 required");
      }
      if (task.output_languages.size() != 2) bad_input(task.kind, "two output languages required");
      break;
    case TaskKind::keywords_for_source: {
      const auto* src = member(in, "source");
      const auto* count = member(in, "count");
      if (src == nullptr || member(*src, "title") == nullptr) bad_input(task.kind, "source.title required");
      if (count == nullptr || !count->is_number_integer() || count->get<int>() < 0) {
        bad_input(task.kind, "count must be a non-negative integer");
      }
      if (member(in, "target_language") == nullptr) bad_input(task.kind, "target_language required");
      break;
    }
    case TaskKind::suggest_queries: {
      const auto* seeds = member(in, "seeds");
      const auto* count = member(in, "count");
      if (seeds == nullptr || !seeds->is_array() || seeds->empty()) bad_input(task.kind, "seeds required");
      for (const auto& s : *seeds) {
        if (!valid_suggestion(s)) bad_input(task.kind, "each seed needs text and language");
      }
      if (count == nullptr || !count->is_number_integer() || count->get<int>() < 1) {
        bad_input(task.kind, "count must be >= 1");
      }
      if (member(in, "target_language") == nullptr) bad_input(task.kind, "target_language required");
      break;
    }
    case TaskKind::label_topic: {
      const auto* t = member(in, "text");
      if (t == nullptr || !t->is_string()) bad_input(task.kind, "text required");
      break;
    }
    case TaskKind::compare_marginal: {
      const auto* base = member(in, "base");
      const auto* target = member(in, "target");
      if (base == nullptr || target == nullptr || !string_array(*base) || !string_array(*target)) {
        bad_input(task.kind, "base and target must be string arrays");
      }
      break;
    }
  }
}

void validate_task_output(const GenerativeTask& task, const json& out) {
  const auto kind = task.kind;
  if (!out.is_object()) bad_output(kind, "must be an object", out);
  switch (kind) {
    case TaskKind::summarize_batch: {
      std::set<std::string> urls;
      for (const auto& s : task.inputs.at("sources")) urls.insert(s.at("url").get<std::string>());
      const auto* kps = member(out, "key_points");
      if (kps == nullptr || !kps->is_array()) bad_output(kind, "key_points must be an array", out);
      if (!urls.empty() && kps->empty()) bad_output(kind, "non-empty batch needs a key point", out);
      for (const auto& kp : *kps) {
        const auto* t = member(kp, "text");
        const auto* refs = member(kp, "source_refs");
        if (t == nullptr || !nonblank_string(*t)) bad_output(kind, "key point text missing", out);
        if (refs == nullptr || !string_array(*refs) || refs->empty()) {
          bad_output(kind, "key point needs source_refs", out);
        }
        for (const auto& r : *refs) {
          if (!urls.contains(r.get<std::string>())) bad_output(kind, "source_ref outside the batch", out);
        }
      }
      break;
    }
    case TaskKind::compare_summaries: {
      const auto* points = member(out, "comparison");
      if (points == nullptr || !points->is_array()) bad_output(kind, "comparison must be an array", out);
      bool similarity = false;
      bool difference = false;
      std::set<std::string> langs;
      for (const auto& p : *points) {
        const auto* k = member(p, "kind");
        const auto* t = member(p, "text");
        const auto* sq = member(p, "suggested_queries");
        if (k == nullptr || !k->is_string() || (*k != "similarity" && *k != "difference")) {
          bad_output(kind, "point kind must be similarity or difference", out);
        }
        if (t == nullptr || !nonblank_string(*t)) bad_output(kind, "point text missing", out);
        if (sq == nullptr || !sq->is_array() || sq->empty() || sq->size() > 2) {
          bad_output(kind, "each point needs 1-2 suggested queries", out);
        }
        for (const auto& q : *sq) {
          if (!valid_suggestion(q)) bad_output(kind, "suggested query needs text and language", out);
          const auto lang = q.at("language").get<std::string>();
          if (std::find(task.output_languages.begin(), task.output_languages.end(), lang) ==
              task.output_languages.end()) {
            bad_output(kind, "suggested query language outside the pair", out);
          }
          langs.insert(lang);
        }
        (*k == "similarity" ? similarity : difference) = true;
      }
      if (has_key_points(task.inputs.at("summary_l1")) && has_key_points(task.inputs.at("summary_l2"))) {
        if (!similarity || !difference) bad_output(kind, "needs a similarity and a difference", out);
        if (langs.size() != 2) bad_output(kind, "suggested queries must cover both languages", out);
      }
      break;
    }
    case TaskKind::keywords_for_source: {
      const auto* kws = member(out, "keywords");
      if (kws == nullptr || !string_array(*kws)) bad_output(kind, "keywords must be a string array", out);
      if (static_cast<int>(kws->size()) > task.inputs.at("count").get<int>()) {
        bad_output(kind, "too many keywords", out);
      }
      for (const auto& k : *kws) {
        if (!nonblank_string(k)) bad_output(kind, "blank keyword", out);
      }
      break;
    }
    case TaskKind::suggest_queries: {
      const auto* qs = member(out, "queries");
      if (qs == nullptr || !qs->is_array() || qs->empty()) bad_output(kind, "queries must be non-empty", out);
      if (static_cast<int>(qs->size()) > task.inputs.at("count").get<int>()) {
        bad_output(kind, "too many queries", out);
      }
      const auto target = task.inputs.at("target_language").get<std::string>();
      for (const auto& q : *qs) {
        if (!valid_suggestion(q) || q.at("language") != target) {
          bad_output(kind, "queries must be in the target language", out);
        }
      }
      break;
    }
    case TaskKind::label_topic: {
      const auto* t = member(out, "topic");
      if (t == nullptr || !nonblank_string(*t)) bad_output(kind, "topic must be a non-empty string", out);
      break;
    }
    case TaskKind::compare_marginal: {
      const auto* n = member(out, "new_points");
      const auto* o = member(out, "overlapping_points");
      if (n == nullptr || o == nullptr || !string_array(*n) || !string_array(*o)) {
        bad_output(kind, "new_points and overlapping_points must be string arrays", out);
      }
      break;
    }
  }
}

std::string output_contract(TaskKind kind) {
  switch (kind) {
    case TaskKind::summarize_batch:
      return R"({"key_points":[{"text":string,"source_refs":[url from the input sources, at least one]}]})"
             " -- write the key points in the input language; at least one key point when sources are given.";
    case TaskKind::compare_summaries:
      return R"({"comparison":[{"kind":"similarity"|"difference","text":string,)"
             R"("suggested_queries":[{"text":string,"language":language code}]}]})"
             " -- include at least one similarity and one difference; every point has one or two"
             " suggested queries; across all points use both output languages.";
    case TaskKind::keywords_for_source:
      return R"({"keywords":[string]})"
             " -- at most `count` short keywords describing the source, written in target_language.";
    case TaskKind::suggest_queries:
      return R"({"queries":[{"text":string,"language":target_language}]})"
             " -- at most `count` idiomatic search queries in target_language. The first query is the"
             " most direct rendering of the first seed.";
    case TaskKind::label_topic:
      return R"({"topic":string})" " -- a lowercase topic label of at most four words.";
    case TaskKind::compare_marginal:
      return R"({"new_points":[string],"overlapping_points":[string]})"
             " -- new_points: information in target absent from base; overlapping_points: information"
             " present in both. A point never appears in both lists.";
  }
  return "{}";
}

}  // namespace langscent::providers
