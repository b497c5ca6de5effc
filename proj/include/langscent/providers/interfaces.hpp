#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "langscent/core/classify.hpp"

namespace langscent::providers {

struct SearchHit {
  std::string url;
  std::string title;
  std::string snippet;
};

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

double dot(const EmbeddingVector& a, const EmbeddingVector& b);
double norm(const EmbeddingVector& v);
// 0 when either vector is zero.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);
// Similarities this close count as equal; normalization leaves last-bit noise
// on cosines that are mathematically tied.
inline constexpr double kSimilarityTolerance = 1e-12;
// Cosine rounded to a multiple of kSimilarityTolerance, for sorting.
double similarity_key(double cosine);
// Throws Error{degraded} for zero or non-finite input.
EmbeddingVector l2_normalize(std::vector<double> values);

enum class TaskKind {
  summarize_batch,
  compare_summaries,
  keywords_for_source,
  suggest_queries,
  label_topic,
  compare_marginal,
};

std::string_view to_string(TaskKind kind);

struct GenerativeTask {
  TaskKind kind = TaskKind::label_topic;
  nlohmann::json inputs;
  std::vector<std::string> output_languages;
};

// Implementations must be safe for concurrent calls.

class SearchProvider {
 public:
  virtual ~SearchProvider() = default;
  virtual std::vector<SearchHit> search(std::string_view query, std::string_view language_code,
                                        int n) = 0;
};

class TranslationProvider : public LanguageDetector {
 public:
  virtual std::string translate(std::string_view text, std::string_view source_code,
                                std::string_view target_code) = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual EmbeddingVector embed(std::string_view text) = 0;
  virtual int dimension() const = 0;
};

class GenerativeProvider {
 public:
  virtual ~GenerativeProvider() = default;
  // Returns output that already passed validate_task_output.
  virtual nlohmann::json generate(const GenerativeTask& task) = 0;
};

}  // namespace langscent::providers
