#pragma once

// Deterministic offline providers. Every output is a pure function of the
// inputs plus the fixture corpus and glossary, so pipelines built on them are
// byte-for-byte reproducible.

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "langscent/providers/interfaces.hpp"

namespace langscent::providers {

struct CorpusDocument {
  std::string url;
  std::string title;
  std::string snippet;
  std::string language;
};

struct GlossaryEntry {
  std::string term;         // Latin-script side, lowercase
  std::string translation;  // Han-script side
};

class MockCorpus {
 public:
  MockCorpus(std::vector<CorpusDocument> documents, std::vector<GlossaryEntry> glossary);

  // corpus: JSON lines {url,title,snippet,language}; glossary: JSON object
  // mapping a Latin term to one or more Han translations.
  static MockCorpus load(const std::filesystem::path& corpus, const std::filesystem::path& glossary);

  const std::vector<CorpusDocument>& documents() const { return documents_; }
  const std::vector<GlossaryEntry>& glossary() const { return glossary_; }

  // Content tokens of the query plus the tokens of every glossary
  // equivalent it mentions, deduplicated.
  std::vector<std::string> expanded_terms(std::string_view query) const;

 private:
  std::vector<CorpusDocument> documents_;
  std::vector<GlossaryEntry> glossary_;
};

// Scores each document in the requested language by the number of distinct
// expanded query terms found among its title+snippet content tokens. Positive
// scores only, best first, ties by url.
class MockSearchProvider : public SearchProvider {
 public:
  explicit MockSearchProvider(std::shared_ptr<const MockCorpus> corpus) : corpus_(std::move(corpus)) {}
  std::vector<SearchHit> search(std::string_view query, std::string_view language_code, int n) override;

 private:
  std::shared_ptr<const MockCorpus> corpus_;
};

// translate() prefixes the target marker ("⟦zh⟧career advice") and strips a
// marker naming the source language, so a round trip restores the input.
class MockTranslationProvider : public TranslationProvider {
 public:
  std::string translate(std::string_view text, std::string_view source_code,
                        std::string_view target_code) override;
  std::string detect(std::string_view text, std::span<const std::string> candidates) override;
};

// Character trigrams of the lowercased text (the whole text when shorter than
// three codepoints), FNV-1a hashed into D buckets, counted, L2-normalized.
class MockEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit MockEmbeddingProvider(int dimension);
  EmbeddingVector embed(std::string_view text) override;
  int dimension() const override { return dimension_; }

 private:
  int dimension_;
};

std::uint64_t fnv1a64(std::string_view bytes);

// Template-driven generative provider; see the rule per task kind in mock.cpp.
class MockGenerativeProvider : public GenerativeProvider {
 public:
  nlohmann::json generate(const GenerativeTask& task) override;
};

// First six words of the text (before any "(+n related)" suffix), capped at
// 32 codepoints. Used by the mock to turn key points into queries.
std::string mock_short_query(std::string_view text);

}  // namespace langscent::providers
