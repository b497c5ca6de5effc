#include "langscent/service/session_store.hpp"

#include <fstream>
#include <sstream>

#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"

namespace langscent::service {

using nlohmann::json;

namespace {

json header_of(const SearchSession& s) {
  return json{{"id", s.id()}, {"language_pair", s.language_pair()}, {"created_at", s.created_at()}};
}

bool valid_session_id(const std::string& id) {
  if (id.empty() || id.size() > 128) return false;
  for (const char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                    c == '_' || c == '.';
    if (!ok) return false;
  }
  return id != "." && id != "..";
}

}  // namespace

std::string session_to_jsonl(const SearchSession& s) {
  std::string out = header_of(s).dump() + "\n";
  for (const auto& e : s.events()) out += json(e).dump() + "\n";
  return out;
}

SearchSession session_from_jsonl(std::string_view text, double cjk_threshold) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::invalid_input, "empty session log");
  auto doc = parse_json(line);
  doc["events"] = json::array();
  while (std::getline(in, line)) {
    if (!line.empty()) doc["events"].push_back(parse_json(line));
  }
  return session_from_json(doc, cjk_threshold);
}

SessionStore::SessionStore(std::optional<std::filesystem::path> data_dir, double cjk_threshold)
    : data_dir_(std::move(data_dir)), cjk_threshold_(cjk_threshold) {
  if (data_dir_) std::filesystem::create_directories(*data_dir_);
}

std::filesystem::path SessionStore::log_path(const std::string& id) const { return *data_dir_ / (id + ".jsonl"); }

void SessionStore::write_log(const SearchSession& s) const {
  if (!data_dir_) return;
  std::ofstream out(log_path(s.id()), std::ios::binary | std::ios::trunc);
  out << session_to_jsonl(s);
  if (!out) throw Error(ErrorCode::internal, "cannot write session log for " + s.id());
}

void SessionStore::append_log(const SearchSession& s, const ActivityEvent& e) const {
  if (!data_dir_) return;
  std::ofstream out(log_path(s.id()), std::ios::binary | std::ios::app);
  out << json(e).dump() << '\n';
  if (!out) throw Error(ErrorCode::internal, "cannot append to session log for " + s.id());
}

std::shared_ptr<SessionEntry> SessionStore::create(SearchSession session, const providers::Providers& p) {
  if (!valid_session_id(session.id())) throw Error(ErrorCode::invalid_input, "invalid session id");
  auto entry = std::make_shared<SessionEntry>();
  entry->index = std::make_unique<index::ActivityIndex>(session.id(), session.language_pair());
  entry->index->rebuild(p, session);
  entry->session = std::move(session);

  std::unique_lock lock(mu_);
  if (sessions_.contains(entry->session.id())) {
    throw Error(ErrorCode::invalid_input, "session " + entry->session.id() + " already exists");
  }
  write_log(entry->session);
  sessions_.emplace(entry->session.id(), entry);
  return entry;
}

std::shared_ptr<SessionEntry> SessionStore::get(const std::string& id) const {
  std::shared_lock lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::not_found, "no session " + id);
  return it->second;
}

bool SessionStore::contains(const std::string& id) const {
  std::shared_lock lock(mu_);
  return sessions_.contains(id);
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, entry] : sessions_) out.push_back(id);
  return out;
}

const ActivityEvent& SessionStore::append(SessionEntry& entry, EventKind kind, EventPayload payload,
                                          std::optional<std::string> query_ref, TimestampMs timestamp) {
  const auto& e = entry.session.append(kind, std::move(payload), std::move(query_ref), timestamp);
  append_log(entry.session, e);
  return e;
}

std::size_t SessionStore::load_all(const providers::Providers& p) {
  if (!data_dir_) return 0;
  std::size_t loaded = 0;
  for (const auto& file : std::filesystem::directory_iterator(*data_dir_)) {
    if (file.path().extension() != ".jsonl") continue;
    std::ifstream in(file.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    auto session = session_from_jsonl(buf.str(), cjk_threshold_);
    auto entry = std::make_shared<SessionEntry>();
    entry->index = std::make_unique<index::ActivityIndex>(session.id(), session.language_pair());
    entry->index->rebuild(p, session);
    entry->session = std::move(session);
    std::unique_lock lock(mu_);
    sessions_[entry->session.id()] = entry;
    ++loaded;
  }
  return loaded;
}

}  // namespace langscent::service
