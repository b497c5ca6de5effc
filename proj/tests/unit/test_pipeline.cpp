#include "catch2/catch_amalgamated.hpp"

#include <set>

#include "fixtures.hpp"
#include "golden.hpp"
#include "langscent/core/error.hpp"
#include "langscent/pipeline/clustering.hpp"
#include "langscent/pipeline/search_pipeline.hpp"
#include "langscent/providers/generative.hpp"

using namespace langscent;
using namespace langscent::pipeline;
using nlohmann::json;

namespace {

const LanguageTag kEn{Side::l1, "en"};
const LanguageTag kZh{Side::l2, "zh"};

// Search that fails for one language code and delegates otherwise.
class FailingSearch : public providers::SearchProvider {
 public:
  FailingSearch(std::shared_ptr<providers::SearchProvider> inner, std::string fail_code, ErrorCode code)
      : inner_(std::move(inner)), fail_code_(std::move(fail_code)), code_(code) {}
  std::vector<providers::SearchHit> search(std::string_view q, std::string_view lang, int n) override {
    if (lang == fail_code_) throw Error(code_, "search backend down");
    return inner_->search(q, lang, n);
  }

 private:
  std::shared_ptr<providers::SearchProvider> inner_;
  std::string fail_code_;
  ErrorCode code_;
};

// Generative provider that fails one task kind, optionally only for some inputs.
class FailingGenerative : public providers::GenerativeProvider {
 public:
  FailingGenerative(std::shared_ptr<providers::GenerativeProvider> inner, providers::TaskKind kind,
                    std::string needle = {})
      : inner_(std::move(inner)), kind_(kind), needle_(std::move(needle)) {}
  json generate(const providers::GenerativeTask& task) override {
    if (task.kind == kind_ && task.inputs.dump().find(needle_) != std::string::npos) {
      throw Error(ErrorCode::degraded, "bad model output", "{}");
    }
    return inner_->generate(task);
  }

 private:
  std::shared_ptr<providers::GenerativeProvider> inner_;
  providers::TaskKind kind_;
  std::string needle_;
};

class FailingTranslation : public providers::TranslationProvider {
 public:
  std::string translate(std::string_view, std::string_view, std::string_view) override {
    throw Error(ErrorCode::provider_unavailable, "translator down");
  }
  std::string detect(std::string_view, std::span<const std::string> c) override { return c.front(); }
};

Query query(const std::string& text) { return testing::golden_query(text, testing::en_zh()); }

}  // namespace

TEST_CASE("rewrite_query") {
  const auto p = testing::mock_providers();
  const auto info = rewrite_query(p, query("career advice"), kZh);
  CHECK(info.rewritten_other.text == "⟦zh⟧career advice");
  CHECK(info.rewritten_other.language.side == Side::l2);
  CHECK(info.original.text == "career advice");
  CHECK(info.provenance == provenance::kRewritten);
  CHECK(rewrite_query(p, query("职业建议"), kEn).rewritten_other.language.side == Side::l1);
  CHECK_THROWS_AS(rewrite_query(p, query("career advice"), kEn), Error);

  auto broken = p;
  broken.generative = std::make_shared<FailingGenerative>(p.generative, providers::TaskKind::suggest_queries);
  const auto raw = rewrite_query(broken, query("career advice"), kZh);
  CHECK(raw.rewritten_other.text == "⟦zh⟧career advice");
  CHECK(raw.provenance == provenance::kRawTranslation);

  auto no_translation = p;
  no_translation.translation = std::make_shared<FailingTranslation>();
  CHECK_THROWS_AS(rewrite_query(no_translation, query("career advice"), kZh), Error);
}

TEST_CASE("summarize_language") {
  const auto p = testing::mock_providers();
  CHECK(summarize_language(p, {}, {}, kEn).key_points.empty());
  const auto batch = providers::search(p, "swiss food", kEn, 10);
  const auto clusters = cluster_batch(p, batch);
  const auto summary = summarize_language(p, clusters, batch, kEn);
  REQUIRE(summary.key_points.size() == clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const std::set<std::string> members(clusters[i].member_urls.begin(), clusters[i].member_urls.end());
    CHECK_FALSE(summary.key_points[i].source_refs.empty());
    for (const auto& ref : summary.key_points[i].source_refs) CHECK(members.contains(ref));
    CHECK_FALSE(summary.key_points[i].fallback);
  }

  auto broken = p;
  broken.generative = std::make_shared<FailingGenerative>(p.generative, providers::TaskKind::summarize_batch);
  const auto fallback = summarize_language(broken, clusters, batch, kEn);
  REQUIRE(fallback.key_points.size() == clusters.size());
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    CHECK(fallback.key_points[i].fallback);
    CHECK(fallback.key_points[i].source_refs == std::vector<std::string>{clusters[i].member_urls.front()});
  }
}

TEST_CASE("build_comparison") {
  const auto p = testing::mock_providers();
  const auto& pair = testing::en_zh();
  CHECK(build_comparison(p, pair, {kEn, {}}, {kZh, {}}).empty());

  const LanguageSummary s1{kEn, {{"Swiss fondue basics", {"https://a.example"}, false},
                                 {"Cheese shops", {"https://b.example"}, false}}};
  const LanguageSummary s2{kZh, {{"瑞士奶酪火锅", {"https://c.example"}, false},
                                 {"苏黎世美食", {"https://d.example"}, false}}};
  const auto both = build_comparison(p, pair, s1, s2);
  int sims = 0, diffs = 0;
  std::set<Side> langs;
  for (const auto& point : both) {
    (point.kind == ComparisonKind::similarity ? sims : diffs) += 1;
    CHECK_FALSE(point.suggested_queries.empty());
    for (const auto& q : point.suggested_queries) langs.insert(q.language.side);
  }
  CHECK(sims == 2);
  CHECK(diffs == 2);
  CHECK(langs.size() == 2);

  const auto one = build_comparison(p, pair, s1, {kZh, {}});
  REQUIRE(one.size() == 2);
  for (const auto& point : one) {
    CHECK(point.kind == ComparisonKind::difference);
    CHECK(point.text.rfind("Only en sources cover: ", 0) == 0);
  }
  CHECK(one[0].suggested_queries[1].text == "⟦zh⟧Swiss fondue basics");
}

TEST_CASE("decorate_keywords") {
  const auto p = testing::mock_providers();
  const auto& pair = testing::en_zh();
  std::vector<SourceResult> rs = {
      {"https://a.example", "Swiss cheese fondue guide", "", kEn, 1, {}},
      {"https://b.example", "Visa rules", "", kEn, 2, {}},
      {"https://c.example", "Remote work tips", "", kEn, 3, {}},
  };
  for (const auto& r : decorate_keywords(p, pair, rs, kZh, 0)) CHECK(r.keywords_other_language.empty());
  const auto out = decorate_keywords(p, pair, rs, kZh, 3);
  REQUIRE(out.size() == 3);
  CHECK(out[0].keywords_other_language == std::vector<std::string>{"⟦zh⟧swiss", "⟦zh⟧cheese", "⟦zh⟧fondue"});
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].url == rs[i].url);
    for (const auto& k : out[i].keywords_other_language) CHECK(classify_language(k, pair).side == Side::l2);
  }

  auto broken = p;
  broken.generative =
      std::make_shared<FailingGenerative>(p.generative, providers::TaskKind::keywords_for_source, "Visa rules");
  const auto partial = decorate_keywords(broken, pair, rs, kZh, 3);
  CHECK_FALSE(partial[0].keywords_other_language.empty());
  CHECK(partial[1].keywords_other_language.empty());
  CHECK_FALSE(partial[2].keywords_other_language.empty());
}

TEST_CASE("dedupe_by_url keeps first occurrences") {
  const std::vector<SourceResult> rs = {{"https://a.example", "1", "", kEn, 1, {}},
                                        {"https://b.example", "2", "", kEn, 2, {}},
                                        {"https://a.example", "3", "", kEn, 3, {}}};
  const auto out = dedupe_by_url(rs);
  REQUIRE(out.size() == 2);
  CHECK(out[0].title == "1");
  CHECK(out[1].title == "2");
}

TEST_CASE("golden responses are byte-identical") {
  const auto p = testing::mock_providers();
  for (const auto& g : testing::kGoldenQueries) {
    INFO(g.text);
    const auto first = testing::golden_response(p, testing::en_zh(), g.text);
    CHECK(testing::golden_response(p, testing::en_zh(), g.text) == first);
    CHECK(testing::golden_text(g.file, first) == first);
  }
}

TEST_CASE("golden responses satisfy the response invariants") {
  const auto p = testing::mock_providers();
  const auto& pair = testing::en_zh();
  for (const auto& g : testing::kGoldenQueries) {
    INFO(g.text);
    const auto q = query(g.text);
    const auto r = run_bilingual_search(p, pair, q);
    CHECK_FALSE(r.degraded);
    REQUIRE_FALSE(r.results.empty());
    for (std::size_t i = 0; i < r.results.size(); ++i) {
      CHECK(r.results[i].rank == static_cast<int>(i) + 1);
      CHECK(r.results[i].language == q.language);
      CHECK(r.results[i].keywords_other_language.size() <= 3);
      for (const auto& k : r.results[i].keywords_other_language) CHECK(classify_language(k, pair) == pair.other(q.language));
    }
    // Coverage: summary refs come from the batch of the matching language.
    const auto& same = q.language.side == Side::l1 ? r.comparative_summary.summary_l1 : r.comparative_summary.summary_l2;
    std::set<std::string> batch;
    for (const auto& res : r.results) batch.insert(res.url);
    for (const auto& kp : same.key_points) {
      for (const auto& ref : kp.source_refs) CHECK(batch.contains(ref));
    }
    const auto other_batch = dedupe_by_url(providers::search(p, r.query_info.rewritten_other.text, pair.other(q.language), 10));
    std::set<std::string> other_urls;
    for (const auto& res : other_batch) other_urls.insert(res.url);
    const auto& other = q.language.side == Side::l1 ? r.comparative_summary.summary_l2 : r.comparative_summary.summary_l1;
    CHECK_FALSE(other.key_points.empty());
    for (const auto& kp : other.key_points) {
      for (const auto& ref : kp.source_refs) CHECK(other_urls.contains(ref));
    }
    bool sim = false, diff = false;
    std::set<Side> langs;
    for (const auto& point : r.comparative_summary.comparison) {
      (point.kind == ComparisonKind::similarity ? sim : diff) = true;
      for (const auto& s : point.suggested_queries) langs.insert(s.language.side);
    }
    CHECK(sim);
    CHECK(diff);
    CHECK(langs.size() == 2);
  }
}

TEST_CASE("a rewritten query with no other-language matches gives a one-sided comparison") {
  const auto p = testing::mock_providers();
  const auto r = run_bilingual_search(p, testing::en_zh(), query("appenzeller"));
  CHECK_FALSE(r.results.empty());
  CHECK(r.comparative_summary.summary_l2.key_points.empty());
  CHECK_FALSE(r.comparative_summary.comparison.empty());
  for (const auto& point : r.comparative_summary.comparison) CHECK(point.kind == ComparisonKind::difference);
  CHECK_FALSE(r.degraded);
}

TEST_CASE("branch failures") {
  const auto p = testing::mock_providers();
  auto other_down = p;
  other_down.search = std::make_shared<FailingSearch>(p.search, "zh", ErrorCode::provider_unavailable);
  const auto r = run_bilingual_search(other_down, testing::en_zh(), query("swiss food"));
  CHECK(r.degraded);
  CHECK_FALSE(r.results.empty());
  CHECK(r.comparative_summary.comparison.empty());
  CHECK(r.comparative_summary.summary_l2.key_points.empty());
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].rfind("other language unavailable", 0) == 0);
  CHECK(Json(r).at("other_language_status") == "unavailable");

  auto same_down = p;
  same_down.search = std::make_shared<FailingSearch>(p.search, "en", ErrorCode::quota_exceeded);
  try {
    run_bilingual_search(same_down, testing::en_zh(), query("swiss food"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::quota_exceeded);
  }

  auto no_translation = p;
  no_translation.translation = std::make_shared<FailingTranslation>();
  const auto mono = run_bilingual_search(no_translation, testing::en_zh(), query("swiss food"));
  CHECK(mono.degraded);
  CHECK(mono.query_info.provenance == provenance::kUnavailable);
}
