// langscent: offline session analysis, a one-shot search and the HTTP server.

#include <pthread.h>
#include <signal.h>

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "langscent/core/error.hpp"
#include "langscent/core/json.hpp"
#include "langscent/core/text.hpp"
#include "langscent/core/classify.hpp"
#include "langscent/metrics/metrics.hpp"
#include "langscent/pipeline/search_pipeline.hpp"
#include "langscent/providers/config.hpp"
#include "langscent/providers/providers.hpp"
#include "langscent/service/http_server.hpp"
#include "langscent/service/session_store.hpp"

namespace {

using namespace langscent;

providers::ProviderConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return providers::load_provider_config(path);
}

// A single JSON document (export format) or a JSON-lines session log.
SearchSession read_session(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::not_found, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const auto content = buf.str();
  try {
    return session_from_json(parse_json(content));
  } catch (const Error&) {
    return service::session_from_jsonl(content);
  }
}

std::string fmt_real(std::optional<double> v) {
  if (!v) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

struct Row {
  std::string name;
  std::string cells[7];
};

std::optional<double> mean_of(const std::vector<std::optional<double>>& values) {
  double sum = 0.0;
  int n = 0;
  for (const auto& v : values) {
    if (!v) continue;
    sum += *v;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

int run_analyze(const std::vector<std::string>& files, const std::string& format, const std::string& config_path) {
  const char sep = format == "csv" ? ';' : ',';
  std::vector<Row> rows;
  std::vector<std::vector<std::optional<double>>> columns(7);
  try {
    auto p = providers::make_providers(load_config(config_path));
    analytics::TopicLabeler labeler(p);
    for (const auto& file : files) {
      const auto m = metrics::compute_session_metrics(read_session(file), labeler);
      rows.push_back({file,
                      {std::to_string(m.num_queries), std::to_string(m.num_switches),
                       join_ints(m.segment_lengths, sep), fmt_real(m.engagement_span), fmt_real(m.language_balance),
                       std::to_string(m.num_sources), std::to_string(m.num_topics)}});
      columns[0].push_back(m.num_queries);
      columns[1].push_back(m.num_switches);
      columns[2].push_back(static_cast<double>(m.segment_lengths.size()));
      columns[3].push_back(m.engagement_span);
      columns[4].push_back(m.language_balance);
      columns[5].push_back(m.num_sources);
      columns[6].push_back(m.num_topics);
    }
  } catch (const std::exception& e) {
    std::cerr << "langscent analyze: " << e.what() << '\n';
    return 2;
  }
  Row mean{"mean", {}};
  for (std::size_t c = 0; c < 7; ++c) mean.cells[c] = fmt_real(mean_of(columns[c]));
  rows.push_back(mean);

  static const char* kHeader[] = {"file",           "num_queries",      "num_switches", "segment_lengths",
                                  "engagement_span", "language_balance", "num_sources",  "num_topics"};
  if (format == "csv") {
    for (std::size_t i = 0; i < 8; ++i) std::cout << (i ? "," : "") << kHeader[i];
    std::cout << '\n';
    for (const auto& r : rows) {
      std::cout << r.name;
      for (const auto& cell : r.cells) std::cout << ',' << cell;
      std::cout << '\n';
    }
  } else {
    std::cout << '|';
    for (const auto* h : kHeader) std::cout << ' ' << h << " |";
    std::cout << "\n|";
    for (std::size_t i = 0; i < 8; ++i) std::cout << (i == 0 ? " --- |" : " ---: |");
    std::cout << '\n';
    for (const auto& r : rows) {
      std::cout << "| " << r.name << " |";
      for (const auto& cell : r.cells) std::cout << ' ' << cell << " |";
      std::cout << '\n';
    }
  }
  return 0;
}

int run_search(const std::string& query, const std::string& l1, const std::string& l2,
               const std::string& config_path) {
  try {
    auto p = providers::make_providers(load_config(config_path));
    LanguagePair pair{l1, l2};
    pair.validate();
    Query q;
    q.text = text::trim(query);
    q.language = classify_language(q.text, pair, p.translation.get());
    std::cout << Json(pipeline::run_bilingual_search(p, pair, q)).dump(2) << '\n';
    return 0;
  } catch (const Error& e) {
    std::cerr << "langscent search: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 1;
  }
}

int run_serve(const std::string& host, int port, const std::string& config_path, const std::string& data_dir,
              const std::string& cors_origin) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  try {
    service::ServiceOptions options;
    options.cors_origin = cors_origin;
    if (!data_dir.empty()) options.data_dir = data_dir;
    service::Service svc(providers::make_providers(load_config(config_path)), options);
    service::HttpServer server(svc);
    const int bound = server.start(host, port);
    std::cerr << "langscent listening on http://" << host << ':' << bound << '\n';
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "langscent serve: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilingual search workbench"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "Provider config (.toml or .json)");

  auto* analyze = app.add_subcommand("analyze", "Session metrics report");
  std::vector<std::string> files;
  std::string format = "md";
  analyze->add_option("files", files, "Session files (export JSON or JSON lines)")->required();
  analyze->add_option("--format", format)->check(CLI::IsMember({"md", "csv"}));

  auto* search = app.add_subcommand("search", "Run one bilingual search and print the response");
  std::string query;
  std::string l1 = "en";
  std::string l2 = "zh";
  search->add_option("query", query)->required();
  search->add_option("--l1", l1);
  search->add_option("--l2", l2);

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  std::string cors_origin = "*";
  serve->add_option("--host", host);
  serve->add_option("--port", port);
  serve->add_option("--data-dir", data_dir, "Persist sessions as JSON lines here");
  serve->add_option("--cors-origin", cors_origin);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (*analyze) return run_analyze(files, format, config_path);
  if (*search) return run_search(query, l1, l2, config_path);
  return run_serve(host, port, config_path, data_dir, cors_origin);
}
