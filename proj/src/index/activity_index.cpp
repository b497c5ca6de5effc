#include "langscent/index/activity_index.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <unordered_map>

#include "langscent/core/classify.hpp"
#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"

namespace langscent::index {

using nlohmann::json;

namespace {

std::set<std::string> token_set(std::string_view s) {
  const auto tokens = text::content_tokens(s);
  return {tokens.begin(), tokens.end()};
}

struct Scored {
  const IndexedItem* item;
  double score;
};

// Best-first; ties to the newer item, then the smaller id.
void sort_scored(std::vector<Scored>& v) {
  std::sort(v.begin(), v.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.item->timestamp != b.item->timestamp) return a.item->timestamp > b.item->timestamp;
    return a.item->item_id < b.item->item_id;
  });
}

std::vector<std::string> ids_of(const std::vector<Scored>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.item->item_id);
  return out;
}

}  // namespace

std::vector<FusedEntry> fuse_rankings(const std::vector<std::string>& lexical,
                                      const std::vector<std::string>& semantic, int c) {
  std::vector<FusedEntry> out;
  std::unordered_map<std::string, std::size_t> pos;
  auto entry = [&](const std::string& id) -> FusedEntry& {
    const auto [it, fresh] = pos.emplace(id, out.size());
    if (fresh) out.push_back({id, std::nullopt, std::nullopt, 0.0});
    return out[it->second];
  };
  for (std::size_t i = 0; i < lexical.size(); ++i) {
    auto& e = entry(lexical[i]);
    if (e.lexical_rank) continue;
    e.lexical_rank = static_cast<int>(i + 1);
    e.score += 1.0 / (c + static_cast<double>(i + 1));
  }
  for (std::size_t i = 0; i < semantic.size(); ++i) {
    auto& e = entry(semantic[i]);
    if (e.semantic_rank) continue;
    e.semantic_rank = static_cast<int>(i + 1);
    e.score += 1.0 / (c + static_cast<double>(i + 1));
  }
  return out;
}

std::string item_text(const ActivityEvent& e) {
  switch (e.kind) {
    case EventKind::query: return text::trim(e.as_query()->text);
    case EventKind::click: {
      const auto* s = e.as_source();
      return text::trim(s->title + " " + s->snippet);
    }
    case EventKind::save: {
      const auto* s = e.as_source();
      auto t = text::trim(s->snippet);
      return t.empty() ? text::trim(s->title) : t;
    }
    case EventKind::note: return text::trim(e.as_note()->body);
  }
  return {};
}

ActivityIndex::ActivityIndex(std::string session_id, LanguagePair pair)
    : session_id_(std::move(session_id)), pair_(std::move(pair)) {
  pair_.validate();
}

IndexOutcome ActivityIndex::index_event(const providers::Providers& p, const ActivityEvent& e) {
  {
    std::shared_lock lock(mu_);
    if (seen_events_.contains(e.id)) {
      if (const auto it = items_.find(e.id); it != items_.end()) return {it->second, {}};
      const auto s = skipped_.find(e.id);
      return {std::nullopt, s == skipped_.end() ? "superseded" : s->second};
    }
  }

  IndexOutcome outcome;
  auto txt = item_text(e);
  if (txt.empty()) {
    outcome.skip_reason = std::string("no text in ") + std::string(to_string(e.kind)) + " event";
  } else {
    IndexedItem item;
    item.item_id = e.id;
    item.session_id = session_id_;
    item.kind = e.kind;
    item.language = e.kind == EventKind::query ? e.as_query()->language
                                               : classify_language(txt, pair_, p.translation.get());
    item.embedding = providers::embed(p, txt);
    item.text = std::move(txt);
    item.timestamp = e.timestamp;
    outcome.item = std::move(item);
  }

  std::unique_lock lock(mu_);
  if (!seen_events_.insert(e.id).second) {
    if (const auto it = items_.find(e.id); it != items_.end()) return {it->second, {}};
    return {std::nullopt, skipped_.contains(e.id) ? skipped_.at(e.id) : "superseded"};
  }
  if (const auto* note = e.as_note(); note != nullptr && note->supersedes) erase_locked(*note->supersedes);
  if (outcome.item) {
    insert_locked(*outcome.item);
  } else {
    skipped_[e.id] = outcome.skip_reason;
  }
  return outcome;
}

void ActivityIndex::insert_locked(IndexedItem item) {
  for (const auto& t : token_set(item.text)) postings_[t].insert(item.item_id);
  items_[item.item_id] = std::move(item);
}

void ActivityIndex::erase_locked(const std::string& item_id) {
  const auto it = items_.find(item_id);
  if (it == items_.end()) return;
  for (const auto& t : token_set(it->second.text)) {
    auto p = postings_.find(t);
    if (p == postings_.end()) continue;
    p->second.erase(item_id);
    if (p->second.empty()) postings_.erase(p);
  }
  items_.erase(it);
}

std::vector<RetrievalHit> ActivityIndex::retrieve_related(const providers::Providers& p, std::string_view text,
                                                          const LanguageTag& source_language, int top_k,
                                                          std::optional<std::string> translated) const {
  if (top_k < 1) throw Error(ErrorCode::invalid_input, "top_k must be >= 1");
  if (text::is_blank(text)) throw Error(ErrorCode::invalid_input, "retrieval text must be non-empty");
  {
    std::shared_lock lock(mu_);
    const bool any = std::any_of(items_.begin(), items_.end(),
                                 [&](const auto& kv) { return !(kv.second.language == source_language); });
    if (!any) return {};
  }
  const auto target = pair_.other(source_language);
  const auto translation = translated ? *translated : providers::translate(p, text, source_language, target);
  const auto probe_tokens = token_set(translation);
  const auto probe_vec = providers::embed(p, text);

  std::shared_lock lock(mu_);
  std::map<std::string, int> matches;
  for (const auto& t : probe_tokens) {
    const auto it = postings_.find(t);
    if (it == postings_.end()) continue;
    for (const auto& id : it->second) ++matches[id];
  }

  std::vector<Scored> lexical;
  std::vector<Scored> semantic;
  for (const auto& [id, item] : items_) {
    if (item.language == source_language) continue;
    if (const auto m = matches.find(id); m != matches.end()) lexical.push_back({&item, double(m->second)});
    const double sim = providers::similarity_key(providers::cosine(probe_vec, item.embedding));
    if (sim > 0.0) semantic.push_back({&item, sim});
  }
  sort_scored(lexical);
  sort_scored(semantic);

  std::vector<RetrievalHit> hits;
  for (auto& f : fuse_rankings(ids_of(lexical), ids_of(semantic))) {
    hits.push_back({items_.at(f.item_id), f.lexical_rank, f.semantic_rank, f.score});
  }
  std::sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.fused_score != b.fused_score) return a.fused_score > b.fused_score;
    if (a.item.timestamp != b.item.timestamp) return a.item.timestamp > b.item.timestamp;
    return a.item.item_id < b.item.item_id;
  });
  if (hits.size() > static_cast<std::size_t>(top_k)) hits.resize(static_cast<std::size_t>(top_k));
  return hits;
}

void ActivityIndex::rebuild(const providers::Providers& p, const SearchSession& session) {
  if (session.id() != session_id_) throw Error(ErrorCode::invalid_input, "rebuild from a different session");
  {
    std::unique_lock lock(mu_);
    items_.clear();
    postings_.clear();
    seen_events_.clear();
    skipped_.clear();
  }
  for (const auto& e : session.events()) index_event(p, e);
}

std::size_t ActivityIndex::size() const {
  std::shared_lock lock(mu_);
  return items_.size();
}

std::vector<IndexedItem> ActivityIndex::items() const {
  std::shared_lock lock(mu_);
  std::vector<IndexedItem> out;
  for (const auto& [id, item] : items_) out.push_back(item);
  return out;
}

std::optional<IndexedItem> ActivityIndex::item(std::string_view item_id) const {
  std::shared_lock lock(mu_);
  const auto it = items_.find(std::string(item_id));
  if (it == items_.end()) return std::nullopt;
  return it->second;
}

std::map<std::string, std::string> ActivityIndex::skipped() const {
  std::shared_lock lock(mu_);
  return skipped_;
}

void ActivityIndex::save(const std::filesystem::path& path) const {
  std::shared_lock lock(mu_);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::internal, "cannot write " + path.string());
  out << json{{"format", "langscent-index"},
              {"version", kIndexFormatVersion},
              {"session_id", session_id_},
              {"language_pair", pair_},
              {"seen", seen_events_},
              {"skipped", skipped_}}
             .dump()
      << '\n';
  for (const auto& [id, item] : items_) {
    json j = item;
    j["embedding"] = item.embedding.values;
    out << j.dump() << '\n';
  }
}

std::unique_ptr<ActivityIndex> ActivityIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::not_found, "no index file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::invalid_input, "empty index file");
  const auto header = parse_json(line);
  if (header.value("format", "") != "langscent-index" || header.value("version", 0) != kIndexFormatVersion) {
    throw Error(ErrorCode::invalid_input, "unsupported index format");
  }
  auto idx = std::make_unique<ActivityIndex>(header.at("session_id").get<std::string>(),
                                             language_pair_from_json(header.at("language_pair")));
  try {
    idx->seen_events_ = header.at("seen").get<std::set<std::string>>();
    idx->skipped_ = header.at("skipped").get<std::map<std::string, std::string>>();
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto j = parse_json(line);
      IndexedItem item;
      item.item_id = j.at("item_id").get<std::string>();
      item.session_id = j.at("session_id").get<std::string>();
      const auto kind = parse_event_kind(j.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::invalid_input, "bad item kind");
      item.kind = *kind;
      item.text = j.at("text").get<std::string>();
      item.language = idx->pair_.resolve_or_throw(j.at("language").get<std::string>());
      item.embedding.values = j.at("embedding").get<std::vector<double>>();
      item.timestamp = j.at("timestamp").get<TimestampMs>();
      idx->insert_locked(std::move(item));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::invalid_input, std::string("malformed index file: ") + e.what());
  }
  return idx;
}

void to_json(json& j, const IndexedItem& item) {
  j = json{{"item_id", item.item_id},     {"session_id", item.session_id}, {"kind", to_string(item.kind)},
           {"text", item.text},           {"language", item.language},     {"timestamp", item.timestamp}};
}

void to_json(json& j, const RetrievalHit& hit) {
  j = json{{"item", hit.item},
           {"lexical_rank", hit.lexical_rank ? json(*hit.lexical_rank) : json(nullptr)},
           {"semantic_rank", hit.semantic_rank ? json(*hit.semantic_rank) : json(nullptr)},
           {"fused_score", hit.fused_score}};
}

}  // namespace langscent::index
