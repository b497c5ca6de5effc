#pragma once

// Text primitives shared by classification, tokenization and the mock providers.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace langscent::text {

// Throws Error{invalid_input} on malformed UTF-8.
std::u32string decode_utf8(std::string_view in);
std::string encode_utf8(std::u32string_view in);
void append_utf8(std::string& out, char32_t cp);

bool is_han(char32_t cp);
bool is_space(char32_t cp);

std::string trim(std::string_view s);
bool is_blank(std::string_view s);

// ASCII and Latin-1 lowercase; other codepoints are left as they are.
std::string to_lower(std::string_view s);

std::size_t codepoint_length(std::string_view s);

// Explicit language markers of the form "⟦zh⟧text". Translation mocks emit
// them and the classifier treats a leading marker as authoritative.
std::string language_marker(std::string_view code);
std::optional<std::string> leading_marker(std::string_view s);
std::string strip_leading_marker(std::string_view s);
std::string mark_language(std::string_view code, std::string_view s);

// Lowercased word tokens. Latin text splits on whitespace and punctuation;
// runs of Han characters yield every unigram followed by its bigram with the
// next character. Language markers are dropped.
std::vector<std::string> tokenize(std::string_view s);

// Leading words of a text, without any marker: at most max_words
// whitespace-separated words and max_codepoints codepoints, cut at a word
// boundary when the text has one.
std::string headline(std::string_view s, std::size_t max_words = 6, std::size_t max_codepoints = 32);

bool is_stopword(std::string_view token);

// tokenize() minus stopwords, order preserved, duplicates kept.
std::vector<std::string> content_tokens(std::string_view s);

}  // namespace langscent::text
