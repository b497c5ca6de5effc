#include "langscent/providers/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml++/toml.hpp>

#include "langscent/core/error.hpp"

#ifndef LANGSCENT_DATA_DIR
#define LANGSCENT_DATA_DIR "data"
#endif

namespace langscent::providers {

using nlohmann::json;

namespace {

[[noreturn]] void bad_config(const std::string& why) {
  throw Error(ErrorCode::invalid_input, "provider config: " + why);
}

Endpoint endpoint_from_json(const json& j, const char* name) {
  Endpoint e;
  if (!j.contains(name)) return e;
  const auto& t = j.at(name);
  if (!t.is_object()) bad_config(std::string(name) + " must be a table");
  for (const auto& [key, value] : t.items()) {
    if (key == "api_key" || key == "key" || key == "secret" || key == "token" || key == "password") {
      bad_config(std::string(name) + "." + key + ": inline secrets are not accepted; use api_key_env");
    }
    if (key != "url" && key != "api_key_env" && key != "model") {
      bad_config("unknown key " + std::string(name) + "." + key);
    }
    if (!value.is_string()) bad_config(std::string(name) + "." + key + " must be a string");
  }
  e.url = t.value("url", "");
  e.api_key_env = t.value("api_key_env", "");
  e.model = t.value("model", "");
  return e;
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    bad_config(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

void ProviderConfig::validate() const {
  if (results_per_language < 1) bad_config("results_per_language must be >= 1");
  if (keyword_count < 0) bad_config("keyword_count must be >= 0");
  if (embedding_dim < 2) bad_config("embedding_dim must be >= 2");
  if (timeout_ms < 1 || retry_backoff_ms < 0) bad_config("timeouts must be positive");
  if (mode == Mode::live) {
    for (const auto* e : {&search, &translate, &generate, &embed}) {
      if (e->url.empty()) bad_config("live mode needs search, translate, generate and embed urls");
    }
  }
}

std::string default_corpus_path() { return std::string(LANGSCENT_DATA_DIR) + "/fixtures/corpus.jsonl"; }
std::string default_glossary_path() { return std::string(LANGSCENT_DATA_DIR) + "/fixtures/glossary.json"; }

ProviderConfig config_from_json(const json& j) {
  if (!j.is_object()) bad_config("document must be an object");
  static const std::set<std::string> kKnown = {
      "mode",        "search",        "translate",     "generate",   "embed",
      "results_per_language", "keyword_count", "embedding_dim", "corpus_path", "glossary_path",
      "timeout_ms",  "retry_backoff_ms"};
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.contains(key)) bad_config("unknown key '" + key + "'");
  }
  ProviderConfig c;
  std::string mode = "mock";
  read(j, "mode", mode);
  if (mode == "mock") {
    c.mode = Mode::mock;
  } else if (mode == "live") {
    c.mode = Mode::live;
  } else {
    bad_config("mode must be 'mock' or 'live'");
  }
  c.search = endpoint_from_json(j, "search");
  c.translate = endpoint_from_json(j, "translate");
  c.generate = endpoint_from_json(j, "generate");
  c.embed = endpoint_from_json(j, "embed");
  read(j, "results_per_language", c.results_per_language);
  read(j, "keyword_count", c.keyword_count);
  read(j, "embedding_dim", c.embedding_dim);
  read(j, "corpus_path", c.corpus_path);
  read(j, "glossary_path", c.glossary_path);
  read(j, "timeout_ms", c.timeout_ms);
  read(j, "retry_backoff_ms", c.retry_backoff_ms);
  c.validate();
  return c;
}

ProviderConfig config_from_toml(std::string_view toml_text) {
  try {
    const auto table = toml::parse(toml_text);
    std::ostringstream out;
    out << toml::json_formatter{table};
    return config_from_json(json::parse(out.str()));
  } catch (const toml::parse_error& e) {
    bad_config(std::string("TOML parse error: ") + std::string(e.description()));
  }
}

ProviderConfig load_provider_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad_config("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const auto content = buf.str();

  const auto ext = path.extension().string();
  bool as_json = ext == ".json";
  if (ext != ".json" && ext != ".toml") {
    const auto first = content.find_first_not_of(" \t\r\n");
    as_json = first != std::string::npos && content[first] == '{';
  }

  ProviderConfig c;
  if (as_json) {
    try {
      c = config_from_json(json::parse(content));
    } catch (const json::parse_error& e) {
      bad_config(std::string("JSON parse error: ") + e.what());
    }
  } else {
    c = config_from_toml(content);
  }

  const auto base = path.parent_path();
  for (auto* p : {&c.corpus_path, &c.glossary_path}) {
    if (!p->empty() && std::filesystem::path(*p).is_relative()) *p = (base / *p).string();
  }
  return c;
}

}  // namespace langscent::providers
