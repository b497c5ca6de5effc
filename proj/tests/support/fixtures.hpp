#pragma once

// Shared test fixtures: mock providers and random session generators.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "langscent/core/model.hpp"
#include "langscent/providers/providers.hpp"

namespace langscent::testing {

inline providers::Providers mock_providers(int embedding_dim = 32) {
  providers::ProviderConfig config;
  config.mode = providers::Mode::mock;
  config.embedding_dim = embedding_dim;
  return providers::make_providers(config);
}

inline const LanguagePair& en_zh() {
  static const LanguagePair pair{"en", "zh", 0.3};
  return pair;
}

inline constexpr std::array<const char*, 16> kEnglishWords = {
    "swiss",  "food",      "career", "advice", "fondue",  "visa",   "remote", "salary",
    "zurich", "interview", "cheese", "resume", "geneva",  "travel", "permit", "chocolate"};
inline constexpr std::array<const char*, 16> kChineseWords = {
    "瑞士", "美食", "职业", "建议", "奶酪", "签证", "远程", "工资",
    "苏黎世", "面试", "火锅", "简历", "日内瓦", "旅游", "许可", "巧克力"};

template <class Rng>
std::string random_phrase(Rng& rng, Side side, int min_words = 1, int max_words = 3) {
  std::uniform_int_distribution<int> count(min_words, max_words);
  std::uniform_int_distribution<std::size_t> pick(0, kEnglishWords.size() - 1);
  std::string out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (side == Side::l1) {
      if (i > 0) out += ' ';
      out += kEnglishWords[pick(rng)];
    } else {
      out += kChineseWords[pick(rng)];
    }
  }
  return out;
}

template <class Rng>
std::vector<Side> random_sides(Rng& rng, int n) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Side> out;
  for (int i = 0; i < n; ++i) out.push_back(coin(rng) ? Side::l1 : Side::l2);
  return out;
}

// Session whose queries follow `sides`, with texts in the matching script.
template <class Rng>
SearchSession session_from_sides(Rng& rng, const std::vector<Side>& sides, std::string id = "s-test") {
  SearchSession s(std::move(id), en_zh(), 1'000);
  TimestampMs ts = 1'000;
  for (auto side : sides) {
    ts += 1 + static_cast<TimestampMs>(rng() % 5000);
    s.append(EventKind::query, QueryPayload{random_phrase(rng, side), en_zh().tag(side)}, std::nullopt, ts);
  }
  return s;
}

// Queries interleaved with clicks, saves and notes, some notes superseding
// earlier ones. Urls come from a small pool so duplicates occur.
template <class Rng>
SearchSession random_session(Rng& rng, int max_queries, std::string id = "s-rand") {
  SearchSession s(std::move(id), en_zh(), 1'000);
  std::uniform_int_distribution<int> nq(0, max_queries);
  std::uniform_int_distribution<int> extras(0, 3);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> url(0, 11);
  std::bernoulli_distribution coin(0.5);
  TimestampMs ts = 1'000;
  std::vector<std::string> notes;
  const int queries = nq(rng);
  for (int q = 0; q < queries; ++q) {
    const auto side = coin(rng) ? Side::l1 : Side::l2;
    ts += 1 + static_cast<TimestampMs>(rng() % 5000);
    const auto qid =
        s.append(EventKind::query, QueryPayload{random_phrase(rng, side), en_zh().tag(side)}, std::nullopt, ts).id;
    const int n = extras(rng);
    for (int k = 0; k < n; ++k) {
      ts += static_cast<TimestampMs>(rng() % 3000);
      const auto u = "https://site" + std::to_string(url(rng)) + ".example/page";
      const auto src_side = coin(rng) ? Side::l1 : Side::l2;
      switch (kind(rng)) {
        case 0:
          s.append(EventKind::click, SourcePayload{u, random_phrase(rng, src_side, 2, 4), random_phrase(rng, src_side)},
                   qid, ts);
          break;
        case 1:
          s.append(EventKind::save, SourcePayload{u, random_phrase(rng, src_side), random_phrase(rng, src_side, 2, 5)},
                   qid, ts);
          break;
        default: {
          std::optional<std::string> supersedes;
          if (!notes.empty() && coin(rng)) supersedes = notes[rng() % notes.size()];
          std::optional<std::string> note_url;
          if (coin(rng)) note_url = u;
          const auto& e = s.append(EventKind::note,
                                   NotePayload{random_phrase(rng, src_side, 1, 4), note_url, supersedes},
                                   coin(rng) ? std::optional<std::string>(qid) : std::nullopt, ts);
          notes.push_back(e.id);
        }
      }
    }
  }
  return s;
}

}  // namespace langscent::testing
