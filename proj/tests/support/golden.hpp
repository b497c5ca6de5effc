#pragma once

// Golden search queries over the fixture corpus. Set LANGSCENT_UPDATE_GOLDEN=1
// to rewrite the files instead of comparing against them.

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "langscent/core/classify.hpp"
#include "langscent/core/json.hpp"
#include "langscent/pipeline/search_pipeline.hpp"

namespace langscent::testing {

struct GoldenQuery {
  const char* file;
  const char* text;
};

inline constexpr std::array<GoldenQuery, 6> kGoldenQueries = {{
    {"swiss_food.json", "swiss food"},
    {"career_advice.json", "career advice"},
    {"ruishi_meishi.json", "瑞士美食"},
    {"zhiye_jianyi.json", "职业建议"},
    {"visa_application.json", "visa application"},
    {"yuancheng_gongzuo.json", "远程工作"},
}};

inline Query golden_query(const std::string& text, const LanguagePair& pair) {
  return Query{"q-golden", text, classify_language(text, pair), 0, "golden"};
}

inline std::string golden_response(const providers::Providers& p, const LanguagePair& pair, const std::string& text) {
  return canonical_dump(Json(pipeline::run_bilingual_search(p, pair, golden_query(text, pair)))) + "\n";
}

inline std::filesystem::path golden_path(const std::string& file) {
  return std::filesystem::path(LANGSCENT_SOURCE_DIR) / "tests" / "golden" / file;
}

inline bool updating_golden() {
  const char* v = std::getenv("LANGSCENT_UPDATE_GOLDEN");
  return v != nullptr && std::string(v) == "1";
}

// Returns the stored golden text, writing `actual` first when updating.
inline std::string golden_text(const std::string& file, const std::string& actual) {
  const auto path = golden_path(file);
  if (updating_golden()) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << actual;
  }
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace langscent::testing
