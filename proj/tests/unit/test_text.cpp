#include "catch2/catch_amalgamated.hpp"

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"

using namespace langscent;
using Catch::Matchers::Equals;

TEST_CASE("utf8 decode and encode round trip") {
  const std::string s = "Rösti 餐厅 ⟦zh⟧ 𠀋";
  const auto cps = text::decode_utf8(s);
  CHECK(cps.size() == 15);
  CHECK(text::encode_utf8(cps) == s);
  CHECK(text::codepoint_length("瑞士") == 2);
}

TEST_CASE("malformed utf8 is invalid input") {
  try {
    text::decode_utf8(std::string("\xC3", 1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_input);
  }
  CHECK_THROWS_AS(text::decode_utf8("\xFF\xFE"), Error);
}

TEST_CASE("han detection covers the unified ideograph blocks") {
  CHECK(text::is_han(U'瑞'));
  CHECK(text::is_han(U'㐀'));
  CHECK(text::is_han(U'\U00020000'));
  CHECK_FALSE(text::is_han(U'a'));
  CHECK_FALSE(text::is_han(U'。'));
  CHECK_FALSE(text::is_han(U'ö'));
}

TEST_CASE("trim, blank and lowercase") {
  CHECK(text::trim("  a b \t\n") == "a b");
  CHECK(text::is_blank(" \t　"));
  CHECK_FALSE(text::is_blank(" x "));
  CHECK(text::to_lower("Rösti ZÜRICH") == "rösti zürich");
  CHECK(text::to_lower("瑞士") == "瑞士");
}

TEST_CASE("language markers") {
  CHECK(text::language_marker("zh") == "⟦zh⟧");
  CHECK(text::mark_language("zh", "career advice") == "⟦zh⟧career advice");
  CHECK(text::leading_marker("⟦zh⟧career advice") == std::optional<std::string>("zh"));
  CHECK_FALSE(text::leading_marker("career advice").has_value());
  CHECK(text::strip_leading_marker("⟦zh⟧career advice") == "career advice");
  CHECK(text::strip_leading_marker("plain") == "plain");
}

TEST_CASE("tokenize splits latin on punctuation and emits han unigrams and bigrams") {
  CHECK_THAT(text::tokenize("Swiss-food, guide!"), Equals(std::vector<std::string>{"swiss", "food", "guide"}));
  CHECK_THAT(text::tokenize("瑞士美食"),
             Equals(std::vector<std::string>{"瑞", "瑞士", "士", "士美", "美", "美食", "食"}));
  CHECK_THAT(text::tokenize("⟦zh⟧visa 签证"),
             Equals(std::vector<std::string>{"visa", "签", "签证", "证"}));
  CHECK(text::tokenize("  ").empty());
}

TEST_CASE("content tokens drop stopwords and keep order and duplicates") {
  CHECK_THAT(text::content_tokens("best fondue in Zurich and the fondue"),
             Equals(std::vector<std::string>{"best", "fondue", "zurich", "fondue"}));
  CHECK_THAT(text::content_tokens("瑞士的"), Equals(std::vector<std::string>{"瑞", "瑞士", "士", "士的"}));
  CHECK(text::content_tokens("the of and").empty());
  CHECK(text::is_stopword("the"));
  CHECK(text::is_stopword("的"));
  CHECK_FALSE(text::is_stopword("fondue"));
}

TEST_CASE("headline cuts at word boundaries") {
  CHECK(text::headline("one two three four five six seven") == "one two three four five six");
  CHECK(text::headline("⟦en⟧short text") == "short text");
  // 32-codepoint cap falls inside "budgeting"; the cut backs off to the space.
  CHECK(text::headline("Swiss career planning and budgeting spreadsheets") == "Swiss career planning and");
  CHECK(text::codepoint_length(text::headline("瑞士美食推荐瑞士美食推荐瑞士美食推荐瑞士美食推荐瑞士美食推荐瑞士美食推荐")) == 32);
}
