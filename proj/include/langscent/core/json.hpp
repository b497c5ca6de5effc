#pragma once

// JSON forms of the domain types. Objects use nlohmann::json's sorted-key map,
// so dump() output is canonical: sorted keys, compact, UTF-8, shortest
// round-trip float formatting.

#include <string>

#include <nlohmann/json.hpp>

#include "langscent/core/model.hpp"

namespace langscent {

using Json = nlohmann::json;

void to_json(Json& j, const LanguageTag& t);
void to_json(Json& j, const LanguagePair& p);
void to_json(Json& j, const Query& q);
void to_json(Json& j, const ActivityEvent& e);
void to_json(Json& j, const SourceResult& r);
void to_json(Json& j, const KeyPoint& k);
void to_json(Json& j, const LanguageSummary& s);
void to_json(Json& j, const SuggestedQuery& s);
void to_json(Json& j, const ComparisonPoint& c);
void to_json(Json& j, const ComparativeSummary& c);
void to_json(Json& j, const QueryInfo& q);
void to_json(Json& j, const SearchResponse& r);
void to_json(Json& j, const SearchSession& s);

std::string canonical_dump(const Json& j);

// Parsers throw Error{invalid_input} on malformed documents.
LanguagePair language_pair_from_json(const Json& j, double cjk_threshold = 0.3);
EventPayload payload_from_json(EventKind kind, const Json& j, const LanguagePair& pair);
ActivityEvent event_from_json(const Json& j, const LanguagePair& pair);
SearchSession session_from_json(const Json& j, double cjk_threshold = 0.3);
Json parse_json(std::string_view text);

}  // namespace langscent
