#include "langscent/providers/providers.hpp"

#include <cmath>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"
#include "langscent/core/url.hpp"
#include "langscent/providers/generative.hpp"
#include "langscent/providers/live.hpp"
#include "langscent/providers/mock.hpp"

namespace langscent::providers {

double dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::internal, "embedding dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * b.values[i];
  return s;
}

double norm(const EmbeddingVector& v) { return std::sqrt(dot(v, v)); }

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

double similarity_key(double cosine) { return std::round(cosine / kSimilarityTolerance) * kSimilarityTolerance; }

EmbeddingVector l2_normalize(std::vector<double> values) {
  double sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::degraded, "embedding has non-finite entries");
    sq += v * v;
  }
  if (sq == 0.0) throw Error(ErrorCode::degraded, "embedding is the zero vector");
  const double n = std::sqrt(sq);
  for (double& v : values) v /= n;
  return {std::move(values)};
}

Providers make_providers(const ProviderConfig& config) {
  config.validate();
  Providers p;
  p.config = config;
  if (config.mode == Mode::mock) {
    const auto corpus = std::make_shared<const MockCorpus>(MockCorpus::load(
        config.corpus_path.empty() ? default_corpus_path() : config.corpus_path,
        config.glossary_path.empty() ? default_glossary_path() : config.glossary_path));
    p.search = std::make_shared<MockSearchProvider>(corpus);
    p.translation = std::make_shared<MockTranslationProvider>();
    p.embedding = std::make_shared<MockEmbeddingProvider>(config.embedding_dim);
    p.generative = std::make_shared<MockGenerativeProvider>();
  } else {
    p.search = std::make_shared<LiveSearchProvider>(config.search, config.timeout_ms, config.retry_backoff_ms);
    p.translation =
        std::make_shared<LiveTranslationProvider>(config.translate, config.timeout_ms, config.retry_backoff_ms);
    p.embedding = std::make_shared<LiveEmbeddingProvider>(config.embed, config.embedding_dim, config.timeout_ms,
                                                          config.retry_backoff_ms);
    p.generative =
        std::make_shared<LiveGenerativeProvider>(config.generate, config.timeout_ms, config.retry_backoff_ms);
  }
  return p;
}

std::vector<SourceResult> search(const Providers& p, std::string_view query, const LanguageTag& language,
                                 int n) {
  if (n < 1) throw Error(ErrorCode::invalid_input, "search needs n >= 1");
  if (text::is_blank(query)) throw Error(ErrorCode::invalid_input, "search query must be non-empty");
  const auto hits = p.search->search(query, language.code, n);
  std::vector<SourceResult> out;
  for (const auto& hit : hits) {
    if (static_cast<int>(out.size()) >= n) break;
    SourceResult r;
    try {
      r.url = normalize_url(hit.url);
    } catch (const Error&) {
      continue;
    }
    r.title = hit.title;
    r.snippet = hit.snippet;
    r.language = language;
    r.rank = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(r));
  }
  return out;
}

std::string translate(const Providers& p, std::string_view text_in, const LanguageTag& source,
                      const LanguageTag& target) {
  if (source == target) throw Error(ErrorCode::invalid_input, "translation needs distinct languages");
  if (text::is_blank(text_in)) throw Error(ErrorCode::invalid_input, "cannot translate empty text");
  auto out = p.translation->translate(text_in, source.code, target.code);
  if (text::is_blank(out)) throw Error(ErrorCode::provider_unavailable, "translation came back empty");
  return out;
}

EmbeddingVector embed(const Providers& p, std::string_view text_in) {
  if (text::is_blank(text_in)) throw Error(ErrorCode::invalid_input, "cannot embed empty text");
  auto v = p.embedding->embed(text_in);
  if (std::abs(norm(v) - 1.0) > 1e-9) v = l2_normalize(std::move(v.values));
  return v;
}

nlohmann::json generate(const Providers& p, const GenerativeTask& task) {
  validate_task_inputs(task);
  auto out = p.generative->generate(task);
  validate_task_output(task, out);
  return out;
}

}  // namespace langscent::providers
