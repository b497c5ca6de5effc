#include "langscent/pipeline/clustering.hpp"

#include <algorithm>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"
#include "langscent/providers/generative.hpp"

namespace langscent::pipeline {

std::vector<std::vector<std::size_t>> greedy_threshold_partition(
    std::span<const providers::EmbeddingVector> embeddings, double threshold) {
  // Seeds: an item seeds a new cluster unless an earlier seed is within threshold.
  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    const bool covered = std::any_of(seeds.begin(), seeds.end(), [&](std::size_t s) {
      return providers::cosine(embeddings[i], embeddings[s]) >= threshold - providers::kSimilarityTolerance;
    });
    if (!covered) seeds.push_back(i);
  }

  // Every other item joins its nearest seed; at least one seed is within threshold.
  std::vector<std::vector<std::size_t>> groups(seeds.size());
  std::size_t next_seed = 0;
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    if (next_seed < seeds.size() && seeds[next_seed] == i) {
      groups[next_seed++].push_back(i);
      continue;
    }
    std::size_t best = 0;
    double best_sim = -2.0;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const double sim = providers::cosine(embeddings[i], embeddings[seeds[s]]);
      if (sim >= threshold - providers::kSimilarityTolerance && sim > best_sim + providers::kSimilarityTolerance) {
        best = s;
        best_sim = sim;
      }
    }
    groups[best].push_back(i);
  }
  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

std::string clustering_text(const SourceResult& r) {
  auto t = text::trim(r.title + " " + r.snippet);
  return t.empty() ? r.url : t;
}

std::vector<Cluster> cluster_batch(const providers::Providers& p, std::span<const SourceResult> results,
                                   double threshold) {
  if (results.empty()) return {};
  const auto language = results.front().language;
  if (!std::all_of(results.begin(), results.end(), [&](const SourceResult& r) { return r.language == language; })) {
    throw Error(ErrorCode::invalid_input, "cluster_batch needs a single-language batch");
  }

  std::vector<const SourceResult*> ordered;
  for (const auto& r : results) ordered.push_back(&r);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SourceResult* a, const SourceResult* b) { return a->rank < b->rank; });

  std::vector<providers::EmbeddingVector> embeddings;
  embeddings.reserve(ordered.size());
  for (const auto* r : ordered) embeddings.push_back(providers::embed(p, clustering_text(*r)));

  std::vector<Cluster> clusters;
  for (const auto& group : greedy_threshold_partition(embeddings, threshold)) {
    Cluster c;
    c.id = language.code + "-c" + std::to_string(clusters.size() + 1);
    c.language = language;
    std::vector<double> sum(embeddings[group.front()].dimension(), 0.0);
    for (auto idx : group) {
      c.member_urls.push_back(ordered[idx]->url);
      for (std::size_t d = 0; d < sum.size(); ++d) sum[d] += embeddings[idx].values[d];
    }
    c.centroid = providers::l2_normalize(std::move(sum));
    try {
      c.label = providers::generate(p, providers::label_topic_task(ordered[group.front()]->title))
                    .at("topic")
                    .get<std::string>();
    } catch (const Error&) {
      c.label = "uncategorized";
    }
    clusters.push_back(std::move(c));
  }
  return clusters;
}

}  // namespace langscent::pipeline
