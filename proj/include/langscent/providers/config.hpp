#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace langscent::providers {

enum class Mode { mock, live };

struct Endpoint {
  std::string url;
  // Name of the environment variable that holds the credential. Inline
  // secrets are rejected by the loader.
  std::string api_key_env;
  std::string model;
};

struct ProviderConfig {
  Mode mode = Mode::mock;
  Endpoint search;
  Endpoint translate;
  Endpoint generate;
  Endpoint embed;

  int results_per_language = 10;  // N
  int keyword_count = 3;          // K
  int embedding_dim = 32;         // D

  // Mock fixtures; empty means the bundled data directory.
  std::string corpus_path;
  std::string glossary_path;

  int timeout_ms = 15000;
  int retry_backoff_ms = 250;

  // Throws Error{invalid_input}.
  void validate() const;
};

std::string default_corpus_path();
std::string default_glossary_path();

ProviderConfig config_from_json(const nlohmann::json& j);
ProviderConfig config_from_toml(std::string_view toml_text);

// Chooses the parser by extension (.toml / .json); other extensions are
// sniffed. Relative fixture paths resolve against the config file's directory.
ProviderConfig load_provider_config(const std::filesystem::path& path);

}  // namespace langscent::providers
