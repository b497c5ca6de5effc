#include "catch2/catch_amalgamated.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "langscent/core/json.hpp"
#include "langscent/service/session_store.hpp"

using namespace langscent;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const auto cmd = std::string(LANGSCENT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (const auto n = fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Files {
  std::filesystem::path dir = std::filesystem::temp_directory_path() / "langscent-cli-test";
  std::string a, b, empty;

  Files() {
    std::filesystem::create_directories(dir);
    const LanguageTag en{Side::l1, "en"};
    const LanguageTag zh{Side::l2, "zh"};
    SearchSession s("cli-a", testing::en_zh(), 0);
    const auto q = s.append(EventKind::query, QueryPayload{"swiss food", en}, std::nullopt, 1).id;
    s.append(EventKind::click, SourcePayload{"https://a.example", "Fondue", ""}, q, 2);
    s.append(EventKind::query, QueryPayload{"瑞士美食", zh}, std::nullopt, 3);
    s.append(EventKind::query, QueryPayload{"cheese", en}, std::nullopt, 4);
    a = (dir / "a.json").string();
    std::ofstream(a) << canonical_dump(Json(s));

    SearchSession t("cli-b", testing::en_zh(), 0);
    t.append(EventKind::query, QueryPayload{"visa", en}, std::nullopt, 1);
    t.append(EventKind::query, QueryPayload{"permit", en}, std::nullopt, 2);
    b = (dir / "b.jsonl").string();
    std::ofstream(b) << service::session_to_jsonl(t);

    empty = (dir / "empty.json").string();
    std::ofstream(empty) << canonical_dump(Json(SearchSession("cli-e", testing::en_zh(), 0)));
  }
};

}  // namespace

TEST_CASE("analyze writes a csv report with a means row") {
  Files f;
  const auto r = run("analyze --format csv " + f.a + " " + f.b + " " + f.empty);
  REQUIRE(r.exit_code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] ==
        "file,num_queries,num_switches,segment_lengths,engagement_span,language_balance,num_sources,num_topics");
  const auto ra = split(rows[1], ',');
  REQUIRE(ra.size() == 8);
  CHECK(ra[0] == f.a);
  CHECK(ra[1] == "3");
  CHECK(ra[2] == "2");
  CHECK(ra[3] == "1;1;1");
  CHECK(ra[4] == "0.333333");
  CHECK(ra[5] == "0.918296");
  CHECK(ra[6] == "1");
  CHECK(ra[7] == "1");
  const auto rb = split(rows[2], ',');
  CHECK(rb[1] == "2");
  CHECK(rb[3] == "2");
  CHECK(rb[4] == "1.000000");
  CHECK(rb[5] == "0.000000");
  const auto re = split(rows[3], ',');
  CHECK(re[4] == "null");
  CHECK(re[5] == "null");
  const auto mean = split(rows[4], ',');
  CHECK(mean[0] == "mean");
  CHECK(mean[1] == "1.666667");
  // Null metrics are left out of the mean.
  CHECK(mean[4] == "0.666667");
  CHECK(mean[5] == "0.459148");
}

TEST_CASE("analyze writes a markdown table by default") {
  Files f;
  const auto r = run("analyze " + f.a);
  REQUIRE(r.exit_code == 0);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].rfind("| file | num_queries |", 0) == 0);
  CHECK(rows[1].rfind("| --- |", 0) == 0);
  CHECK(rows[2].find("| 3 | 2 | 1,1,1 |") != std::string::npos);
  CHECK(rows[3].rfind("| mean |", 0) == 0);
}

TEST_CASE("analyze fails cleanly") {
  Files f;
  CHECK(run("analyze /nonexistent/session.json").exit_code == 2);
  CHECK(run("analyze").exit_code == 2);
  CHECK(run("analyze --format xml " + f.a).exit_code == 2);
  const auto bad = (f.dir / "bad.json").string();
  std::ofstream(bad) << "{broken";
  CHECK(run("analyze " + bad).exit_code == 2);
}

TEST_CASE("search prints a response in mock mode") {
  const auto r = run("search \"swiss food\"");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("query_info").at("original").at("text") == "swiss food");
  CHECK_FALSE(j.at("results").empty());
  CHECK(run("search \"   \"").exit_code != 0);
}
