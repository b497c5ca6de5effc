#include "langscent/index/tooltips.hpp"

#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::index {

using nlohmann::json;

ContextualTranslation contextual_translate(const providers::Providers& p, const ActivityIndex& index,
                                           std::string_view selection, const LanguageTag& source_language,
                                           int top_k) {
  if (text::is_blank(selection)) throw Error(ErrorCode::invalid_input, "selection must be non-empty");
  if (top_k < 1) throw Error(ErrorCode::invalid_input, "top_k must be >= 1");
  ContextualTranslation out;
  out.target = index.language_pair().other(source_language);
  out.translation = providers::translate(p, selection, source_language, out.target);
  try {
    out.related = index.retrieve_related(p, selection, source_language, top_k, out.translation);
  } catch (const Error& e) {
    out.related.clear();
    out.retrieval_failed = true;
    out.warnings.push_back(std::string("related items unavailable: ") + e.what());
  }
  return out;
}

OtherLanguagePreview preview_other_language(const providers::Providers& p, const LanguagePair& pair,
                                            std::string_view selection, const LanguageTag& source_language,
                                            int num_queries, int num_sources) {
  if (text::is_blank(selection)) throw Error(ErrorCode::invalid_input, "selection must be non-empty");
  if (num_queries < 1 || num_sources < 1) throw Error(ErrorCode::invalid_input, "preview counts must be >= 1");
  const auto target = pair.other(source_language);
  const auto seed = providers::translate(p, selection, source_language, target);

  OtherLanguagePreview out;
  const auto generated =
      providers::generate(p, providers::suggest_queries_task({{seed, target.code}}, target.code, num_queries));
  for (const auto& q : generated.at("queries")) out.suggested_queries.push_back({q.at("text").get<std::string>(), target});

  try {
    out.sources = providers::search(p, out.suggested_queries.front().text, target, num_sources);
  } catch (const Error& e) {
    out.sources.clear();
    out.search_failed = true;
    out.warnings.push_back(std::string("preview sources unavailable: ") + e.what());
  }
  return out;
}

void to_json(json& j, const ContextualTranslation& t) {
  j = json{{"translation", t.translation},
           {"language", t.target},
           {"related", t.related},
           {"retrieval_failed", t.retrieval_failed},
           {"warnings", t.warnings}};
}

void to_json(json& j, const OtherLanguagePreview& p) {
  j = json{{"suggested_queries", p.suggested_queries},
           {"sources", p.sources},
           {"search_failed", p.search_failed},
           {"warnings", p.warnings}};
}

}  // namespace langscent::index
