#pragma once

// Provider bundle plus the contract-checked operations the rest of the system
// calls. Downstream code never talks to a provider implementation directly.

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/core/model.hpp"
#include "langscent/providers/config.hpp"
#include "langscent/providers/interfaces.hpp"

namespace langscent::providers {

struct Providers {
  ProviderConfig config;
  std::shared_ptr<SearchProvider> search;
  std::shared_ptr<TranslationProvider> translation;
  std::shared_ptr<EmbeddingProvider> embedding;
  std::shared_ptr<GenerativeProvider> generative;
};

// Throws Error{invalid_input} on an invalid config or missing fixture files.
Providers make_providers(const ProviderConfig& config);

// At most n results ranked 1..m, urls normalized, tagged with `language`.
std::vector<SourceResult> search(const Providers& p, std::string_view query, const LanguageTag& language,
                                 int n);

std::string translate(const Providers& p, std::string_view text, const LanguageTag& source,
                      const LanguageTag& target);

EmbeddingVector embed(const Providers& p, std::string_view text);

// Validates inputs, calls the provider, validates the output.
nlohmann::json generate(const Providers& p, const GenerativeTask& task);

}  // namespace langscent::providers
