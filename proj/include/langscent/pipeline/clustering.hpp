#pragma once

#include <span>
#include <string>
#include <vector>

#include "langscent/core/model.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::pipeline {

inline constexpr double kClusterThreshold = 0.75;

struct Cluster {
  std::string id;
  LanguageTag language;
  std::vector<std::string> member_urls;
  providers::EmbeddingVector centroid;
  std::string label;
};

// Greedy threshold clustering over embeddings given in rank order. Seeds are
// taken in order: an item becomes a seed unless an earlier seed is within
// threshold (cosine >= threshold). Every non-seed then joins its most similar
// seed among those within threshold, the earlier seed on ties. Similarities
// within providers::kSimilarityTolerance count as tied. Returns index groups
// ordered by their smallest index, members ascending.
std::vector<std::vector<std::size_t>> greedy_threshold_partition(
    std::span<const providers::EmbeddingVector> embeddings, double threshold);

// Embeds title + snippet of each result and partitions the batch. Clusters are
// ordered by their best member rank. All results must share one language.
std::vector<Cluster> cluster_batch(const providers::Providers& p, std::span<const SourceResult> results,
                                   double threshold = kClusterThreshold);

// Text the clusterer embeds for one result.
std::string clustering_text(const SourceResult& r);

}  // namespace langscent::pipeline
