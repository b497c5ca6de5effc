#include "langscent/core/classify.hpp"

#include <array>

#include "langscent/core/error.hpp"
#include "langscent/core/text.hpp"

namespace langscent {

bool is_han_language(std::string_view code) {
  const auto primary = text::to_lower(code.substr(0, code.find('-')));
  static constexpr std::array<std::string_view, 5> kHan = {"zh", "cmn", "yue", "wuu", "lzh"};
  for (auto h : kHan) {
    if (primary == h) return true;
  }
  return false;
}

double han_ratio(std::string_view text) {
  std::size_t total = 0;
  std::size_t han = 0;
  for (char32_t cp : text::decode_utf8(text)) {
    if (text::is_space(cp)) continue;
    ++total;
    if (text::is_han(cp)) ++han;
  }
  return total == 0 ? 0.0 : static_cast<double>(han) / static_cast<double>(total);
}

LanguageTag classify_language(std::string_view text, const LanguagePair& pair,
                              LanguageDetector* detector) {
  if (text::is_blank(text)) throw Error(ErrorCode::invalid_input, "cannot classify empty text");

  if (const auto marker = text::leading_marker(text)) {
    if (auto tag = pair.resolve(*marker)) return *tag;
  }

  const bool l1_han = is_han_language(pair.l1);
  const bool l2_han = is_han_language(pair.l2);
  if (l1_han != l2_han) {
    const Side han_side = l1_han ? Side::l1 : Side::l2;
    return pair.tag(han_ratio(text) >= pair.cjk_threshold ? han_side : opposite(han_side));
  }

  if (detector == nullptr) {
    throw Error(ErrorCode::invalid_input,
                "language pair " + pair.l1 + "/" + pair.l2 + " needs a language detector");
  }
  const std::array<std::string, 2> candidates = {pair.l1, pair.l2};
  const auto detected = detector->detect(text, candidates);
  if (auto tag = pair.resolve(detected)) return *tag;
  throw Error(ErrorCode::provider_unavailable, "detector returned unknown language '" + detected + "'");
}

}  // namespace langscent
