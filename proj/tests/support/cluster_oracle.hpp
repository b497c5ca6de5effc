#pragma once

// Naive reimplementation of the result clustering rule and a random batch
// generator, shared by the unit and acceptance tests.

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "langscent/core/text.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::testing {

// Rounds of "take the best-ranked unassigned result as a seed and mark
// everything within tau of it", then a separate nearest-seed assignment.
inline std::vector<std::set<std::string>> oracle_partition(const providers::Providers& p,
                                                    const std::vector<SourceResult>& by_rank, double tau) {
  const auto n = by_rank.size();
  std::vector<providers::EmbeddingVector> e;
  for (const auto& r : by_rank) e.push_back(providers::embed(p, text::trim(r.title + " " + r.snippet)));
  const auto cos = [&](std::size_t a, std::size_t b) {
    double s = 0;
    for (std::size_t d = 0; d < e[a].values.size(); ++d) s += e[a].values[d] * e[b].values[d];
    return s;
  };
  // Similarities within 1e-12 of each other or of tau count as equal.
  const double eps = 1e-12;
  std::vector<bool> assigned(n, false);
  std::vector<std::size_t> seeds;
  while (true) {
    std::size_t s = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!assigned[i]) {
        s = i;
        break;
      }
    }
    if (s == n) break;
    seeds.push_back(s);
    assigned[s] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!assigned[j] && cos(j, s) >= tau - eps) assigned[j] = true;
    }
  }
  std::vector<std::set<std::size_t>> groups(seeds.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto self = std::find(seeds.begin(), seeds.end(), i);
    if (self != seeds.end()) {
      groups[self - seeds.begin()].insert(i);
      continue;
    }
    std::size_t best = seeds.size();
    for (std::size_t k = 0; k < seeds.size(); ++k) {
      if (cos(i, seeds[k]) < tau - eps) continue;
      if (best == seeds.size() || cos(i, seeds[k]) > cos(i, seeds[best]) + eps) best = k;
    }
    if (best == seeds.size()) throw std::logic_error("non-seed without a seed in range");
    groups[best].insert(i);
  }
  std::sort(groups.begin(), groups.end(), [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
  std::vector<std::set<std::string>> out;
  for (const auto& g : groups) {
    std::set<std::string> urls;
    for (auto i : g) urls.insert(by_rank[i].url);
    out.push_back(urls);
  }
  return out;
}

inline std::vector<SourceResult> random_batch(std::mt19937& rng, int size) {
  std::vector<SourceResult> batch;
  const auto side = rng() % 2 ? Side::l1 : Side::l2;
  for (int i = 0; i < size; ++i) {
    SourceResult r;
    r.url = "https://doc" + std::to_string(i) + ".example/p";
    r.title = testing::random_phrase(rng, side, 1, 3);
    r.snippet = testing::random_phrase(rng, side, 0, 3);
    r.language = testing::en_zh().tag(side);
    r.rank = i + 1;
    batch.push_back(r);
  }
  return batch;
}

}  // namespace langscent::testing
