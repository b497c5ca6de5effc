#include "langscent/core/text.hpp"

#include <algorithm>
#include <array>

#include "langscent/core/error.hpp"

namespace langscent::text {

namespace {

constexpr char32_t kMarkerOpen = U'⟦';
constexpr char32_t kMarkerClose = U'⟧';
constexpr std::size_t kMaxMarkerCode = 16;

bool is_punctuation(char32_t cp) {
  if (cp < 0x80) {
    return !((cp >= '0' && cp <= '9') || (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'));
  }
  return (cp >= 0x00A0 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7 ||
         (cp >= 0x2000 && cp <= 0x206F) || (cp >= 0x2190 && cp <= 0x2BFF) ||
         (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFE30 && cp <= 0xFE4F) ||
         (cp >= 0xFF00 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

char32_t lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
  return cp;
}

bool is_marker_code_char(char32_t cp) {
  return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9') ||
         cp == '-' || cp == '_';
}

// Length of a marker starting at pos (including brackets), or 0.
std::size_t marker_length(std::u32string_view s, std::size_t pos) {
  if (pos >= s.size() || s[pos] != kMarkerOpen) return 0;
  for (std::size_t i = pos + 1; i < s.size() && i - pos - 1 <= kMaxMarkerCode; ++i) {
    if (s[i] == kMarkerClose) return i > pos + 1 ? i - pos + 1 : 0;
    if (!is_marker_code_char(s[i])) return 0;
  }
  return 0;
}

constexpr std::array<std::string_view, 96> kEnglishStopwords = {
    "a",     "about", "after", "again", "all",   "also",  "am",    "an",    "and",   "any",
    "are",   "as",    "at",    "be",    "been",  "before", "being", "between", "both", "but",
    "by",    "can",   "could", "did",   "do",    "does",  "doing", "during", "each", "few",
    "for",   "from",  "further", "had", "has",   "have",  "having", "he",   "her",   "here",
    "hers",  "him",   "his",   "how",   "i",     "if",    "in",    "into",  "is",    "it",
    "its",   "me",    "more",  "most",  "my",    "no",    "nor",   "not",   "of",    "off",
    "on",    "once",  "only",  "or",    "other", "our",   "out",   "over",  "own",   "same",
    "she",   "should", "so",   "some",  "such",  "than",  "that",  "the",   "their", "them",
    "then",  "there", "these", "they",  "this",  "to",    "too",   "under", "up",    "very",
    "was",   "we",    "were",  "what",  "when",  "with"};

constexpr std::array<std::string_view, 18> kChineseStopwords = {
    "的", "了", "和", "是", "在", "与", "及", "有", "也",
    "就", "都", "而", "或", "等", "中", "为", "对", "吗"};

}  // namespace

std::u32string decode_utf8(std::string_view in) {
  std::u32string out;
  out.reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    const auto b0 = static_cast<unsigned char>(in[i]);
    std::size_t len = 0;
    char32_t cp = 0;
    if (b0 < 0x80) {
      len = 1;
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      throw Error(ErrorCode::invalid_input, "malformed UTF-8 lead byte");
    }
    if (i + len > in.size()) throw Error(ErrorCode::invalid_input, "truncated UTF-8 sequence");
    for (std::size_t k = 1; k < len; ++k) {
      const auto b = static_cast<unsigned char>(in[i + k]);
      if ((b & 0xC0) != 0x80) throw Error(ErrorCode::invalid_input, "malformed UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    static constexpr std::array<char32_t, 5> kMinForLen = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw Error(ErrorCode::invalid_input, "invalid UTF-8 codepoint");
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view in) {
  std::string out;
  out.reserve(in.size());
  for (char32_t cp : in) append_utf8(out, cp);
  return out;
}

bool is_han(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) ||    // Unified Ideographs
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // Extension A
         (cp >= 0xF900 && cp <= 0xFAFF) ||    // Compatibility Ideographs
         (cp >= 0x20000 && cp <= 0x2A6DF) ||  // Extension B
         (cp >= 0x2A700 && cp <= 0x2EBEF) ||  // Extensions C-F
         (cp >= 0x2F800 && cp <= 0x2FA1F) ||  // Compatibility Supplement
         (cp >= 0x30000 && cp <= 0x3134F);    // Extension G
}

bool is_space(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000;
}

std::string trim(std::string_view s) {
  const auto cps = decode_utf8(s);
  std::size_t b = 0;
  std::size_t e = cps.size();
  while (b < e && is_space(cps[b])) ++b;
  while (e > b && is_space(cps[e - 1])) --e;
  return encode_utf8(std::u32string_view(cps).substr(b, e - b));
}

bool is_blank(std::string_view s) {
  const auto cps = decode_utf8(s);
  return std::all_of(cps.begin(), cps.end(), is_space);
}

std::string to_lower(std::string_view s) {
  auto cps = decode_utf8(s);
  for (auto& cp : cps) cp = lower(cp);
  return encode_utf8(cps);
}

std::size_t codepoint_length(std::string_view s) { return decode_utf8(s).size(); }

std::string language_marker(std::string_view code) {
  std::string out;
  append_utf8(out, kMarkerOpen);
  out.append(code);
  append_utf8(out, kMarkerClose);
  return out;
}

std::optional<std::string> leading_marker(std::string_view s) {
  const auto cps = decode_utf8(s);
  const auto len = marker_length(cps, 0);
  if (len == 0) return std::nullopt;
  return encode_utf8(std::u32string_view(cps).substr(1, len - 2));
}

std::string strip_leading_marker(std::string_view s) {
  const auto cps = decode_utf8(s);
  const auto len = marker_length(cps, 0);
  return encode_utf8(std::u32string_view(cps).substr(len));
}

std::string mark_language(std::string_view code, std::string_view s) {
  return language_marker(code) + strip_leading_marker(s);
}

std::vector<std::string> tokenize(std::string_view s) {
  const auto cps = decode_utf8(s);
  std::vector<std::string> tokens;
  std::u32string word;
  std::u32string han_run;

  const auto flush_word = [&] {
    if (!word.empty()) tokens.push_back(encode_utf8(word));
    word.clear();
  };
  const auto flush_han = [&] {
    for (std::size_t i = 0; i < han_run.size(); ++i) {
      std::string uni;
      append_utf8(uni, han_run[i]);
      tokens.push_back(uni);
      if (i + 1 < han_run.size()) {
        append_utf8(uni, han_run[i + 1]);
        tokens.push_back(std::move(uni));
      }
    }
    han_run.clear();
  };

  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (const auto mlen = marker_length(cps, i); mlen > 0) {
      flush_word();
      flush_han();
      i += mlen - 1;
      continue;
    }
    const char32_t cp = cps[i];
    if (is_han(cp)) {
      flush_word();
      han_run.push_back(cp);
    } else if (is_space(cp) || is_punctuation(cp)) {
      flush_word();
      flush_han();
    } else {
      flush_han();
      word.push_back(lower(cp));
    }
  }
  flush_word();
  flush_han();
  return tokens;
}

std::string headline(std::string_view s, std::size_t max_words, std::size_t max_codepoints) {
  const auto cps = decode_utf8(strip_leading_marker(s));
  std::u32string kept;
  std::size_t words = 0;
  for (char32_t cp : cps) {
    if (is_space(cp)) {
      if (!kept.empty() && kept.back() != U' ') {
        if (++words == max_words) break;
        kept.push_back(U' ');
      }
      continue;
    }
    kept.push_back(cp);
  }
  if (kept.size() > max_codepoints) {
    // Prefer ending on a word boundary; unspaced scripts are cut as they are.
    const auto space = kept.rfind(U' ', max_codepoints);
    kept.resize(space != std::u32string::npos && space > 0 ? space : max_codepoints);
  }
  while (!kept.empty() && kept.back() == U' ') kept.pop_back();
  return encode_utf8(kept);
}

bool is_stopword(std::string_view token) {
  return std::find(kEnglishStopwords.begin(), kEnglishStopwords.end(), token) !=
             kEnglishStopwords.end() ||
         std::find(kChineseStopwords.begin(), kChineseStopwords.end(), token) !=
             kChineseStopwords.end();
}

std::vector<std::string> content_tokens(std::string_view s) {
  auto tokens = tokenize(s);
  std::erase_if(tokens, [](const std::string& t) { return is_stopword(t); });
  return tokens;
}

}  // namespace langscent::text
