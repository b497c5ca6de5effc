#pragma once

#include <span>
#include <string>
#include <string_view>

#include "langscent/core/model.hpp"

namespace langscent {

// Capability to name the language of a text among candidate codes. The
// translation provider implements it; classification uses it for pairs the
// script heuristic cannot separate.
class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  virtual std::string detect(std::string_view text, std::span<const std::string> candidates) = 0;
};

// Han-script language codes (zh, cmn, yue, wuu, lzh and their subtags).
bool is_han_language(std::string_view code);

// Share of Han codepoints among non-whitespace codepoints; 0 for blank text.
double han_ratio(std::string_view text);

// Tags text with one side of the pair. A leading "⟦code⟧" marker naming either
// language wins. Otherwise, when exactly one side is a Han-script language, the
// text belongs to that side iff han_ratio >= pair.cjk_threshold. Any other pair
// is resolved through the detector. Throws Error{invalid_input} for blank text,
// or when a detector is needed but absent.
LanguageTag classify_language(std::string_view text, const LanguagePair& pair,
                              LanguageDetector* detector = nullptr);

class LanguageClassifier {
 public:
  explicit LanguageClassifier(LanguagePair pair, LanguageDetector* detector = nullptr)
      : pair_(std::move(pair)), detector_(detector) {}

  LanguageTag operator()(std::string_view text) const {
    return classify_language(text, pair_, detector_);
  }
  const LanguagePair& pair() const { return pair_; }

 private:
  LanguagePair pair_;
  LanguageDetector* detector_;
};

}  // namespace langscent
