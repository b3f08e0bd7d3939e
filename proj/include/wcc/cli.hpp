#pragma once

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wcc/compare.hpp"
#include "wcc/error.hpp"
#include "wcc/fixtures.hpp"
#include "wcc/graph.hpp"
#include "wcc/io.hpp"
#include "wcc/partition.hpp"
#include "wcc/quality.hpp"
#include "wcc/wcc.hpp"

namespace wcc::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kRefused = 3,
};

enum class Format { Json, Csv };

struct RunConfig {
  std::string graph;
  std::vector<std::string> partitions;
  std::optional<Format> format;
  ConductanceForm conductance = ConductanceForm::Standard;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool allow_isolated = false;
  std::size_t groups = 20;
  double alpha = 0.05;
  std::vector<std::string> series;
  std::string kind;
  std::vector<double> params;
};

namespace detail {

struct Bound {
  Graph graph;
  Partition partition;
};

/// Loads a graph and binds one partition file to it. With `allow_isolated`,
/// partition labels absent from the edge list become isolated vertices.
inline Bound load_bound(const RunConfig& cfg, const std::string& partition_path) {
  Graph g = load_edge_list_file(cfg.graph);
  LabeledPartition lp = load_partition_file(partition_path);
  if (cfg.allow_isolated) {
    auto labels = lp.vertex_labels();
    g = g.with_isolated(labels);
  }
  Partition p = Partition::from_labeled(g, lp);
  return {std::move(g), std::move(p)};
}

inline void print(std::ostream& out, const nlohmann::ordered_json& j) { out << j.dump(2) << '\n'; }

inline int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  auto [g, p] = load_bound(cfg, cfg.partitions.front());
  const WccEvaluator eval(g);
  const ScoreReport report = evaluate(eval, p, cfg.conductance, cfg.threads);
  if (cfg.format.value_or(Format::Json) == Format::Csv) {
    io::write_score_csv(out, report);
  } else {
    print(out, io::to_json(report));
  }
  return kOk;
}

inline int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  auto [g, p] = load_bound(cfg, cfg.partitions.front());
  const WccEvaluator eval(g);
  const auto records = partition_stats(eval, p, cfg.conductance, cfg.threads);
  if (cfg.format.value_or(Format::Csv) == Format::Json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& r : records) j.push_back(io::to_json(r));
    print(out, j);
  } else {
    io::write_stats_csv(out, records);
  }
  return kOk;
}

inline int cmd_report(const RunConfig& cfg, std::ostream& out) {
  std::vector<StatRecord> pool;
  for (const auto& path : cfg.partitions) {
    auto [g, p] = load_bound(cfg, path);
    const WccEvaluator eval(g);
    auto records = partition_stats(eval, p, cfg.conductance, cfg.threads);
    pool.insert(pool.end(), records.begin(), records.end());
  }
  const auto report = percentile_report(std::move(pool), cfg.groups);
  if (cfg.format.value_or(Format::Csv) == Format::Json) {
    auto j = nlohmann::ordered_json::array();
    for (const auto& r : report) j.push_back(io::to_json(r));
    print(out, j);
  } else {
    io::write_percentile_csv(out, report);
  }
  return kOk;
}

inline int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.partitions.size() != 2) throw DomainError("compare needs exactly two --partition files");
  const double v = nmi(load_partition_file(cfg.partitions[0]), load_partition_file(cfg.partitions[1]));
  print(out, {{"nmi", v}});
  return kOk;
}

inline int cmd_rank(const RunConfig& cfg, std::ostream& out) {
  const auto result = kendall(load_rank_series_file(cfg.series[0]), load_rank_series_file(cfg.series[1]), cfg.alpha);
  print(out, io::to_json(result));
  return kOk;
}

inline int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  write_edge_list(out, fixtures::generate(cfg.kind, cfg.params, cfg.seed));
  return kOk;
}

inline int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const Graph g = load_edge_list_file(cfg.graph);
  const auto best = fixtures::exhaustive_best_partition(g);
  nlohmann::ordered_json j;
  j["wcc"] = best.wcc;
  j["examined"] = best.examined;
  auto& comms = j["communities"] = nlohmann::ordered_json::array();
  for (const auto& c : best.partition.communities()) {
    auto members = nlohmann::ordered_json::array();
    for (VertexId v : c) members.push_back(g.label(v));
    comms.push_back(std::move(members));
  }
  print(out, j);
  return kOk;
}

}  // namespace detail

/// Entry point of the `wcc` executable. Never throws; returns the exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Weighted Community Clustering toolkit", "wcc"};
  app.require_subcommand(1);
  RunConfig cfg;

  const std::map<std::string, Format> formats{{"json", Format::Json}, {"csv", Format::Csv}};
  const std::map<std::string, ConductanceForm> forms{{"standard", ConductanceForm::Standard},
                                                     {"paper-literal", ConductanceForm::PaperLiteral}};

  auto add_graph = [&](CLI::App* sub) { sub->add_option("--graph", cfg.graph, "edge list file")->required(); };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "output format")
        ->transform(CLI::CheckedTransformer(formats).description(""))
        ->type_name("json|csv");
    sub->add_option("--conductance", cfg.conductance, "conductance variant")
        ->transform(CLI::CheckedTransformer(forms).description(""))
        ->type_name("standard|paper-literal");
    sub->add_option("--threads", cfg.threads, "worker threads for per-community work")->check(CLI::Range(1u, 1024u));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_flag("--allow-isolated", cfg.allow_isolated,
                  "add partition labels missing from the edge list as isolated vertices");
  };

  auto* evaluate = app.add_subcommand("evaluate", "score a partition (WCC, modularity, conductance)");
  add_graph(evaluate);
  evaluate->add_option("--partition", cfg.partitions, "partition file")->required()->expected(1);
  add_common(evaluate);

  auto* stats = app.add_subcommand("stats", "per-community statistics");
  add_graph(stats);
  stats->add_option("--partition", cfg.partitions, "partition file")->required()->expected(1);
  add_common(stats);

  auto* report = app.add_subcommand("report", "percentile-group report over pooled partitions");
  add_graph(report);
  report->add_option("--partition", cfg.partitions, "partition file (repeatable)")->required();
  report->add_option("--groups", cfg.groups, "number of groups")->check(CLI::PositiveNumber);
  add_common(report);

  auto* compare = app.add_subcommand("compare", "normalized mutual information of two partitions");
  compare->add_option("--partition", cfg.partitions, "partition file (give twice)")->required()->expected(2);
  compare->add_option("--seed", cfg.seed, "random seed");

  auto* rank = app.add_subcommand("rank", "Kendall tau-b between two label,score series");
  rank->add_option("series", cfg.series, "two CSV files")->required()->expected(2);
  rank->add_option("--alpha", cfg.alpha, "significance level")->check(CLI::Range(0.0, 1.0));
  rank->add_option("--seed", cfg.seed, "random seed");

  auto* generate = app.add_subcommand("generate", "emit a fixture graph as an edge list");
  generate->add_option("kind", cfg.kind,
                       "clique|cycle|ring_of_cliques|bridged_cliques|shared_vertex_cliques|clique_satellite|er_random")
      ->required();
  generate->add_option("params", cfg.params, "size parameters");
  generate->add_option("--seed", cfg.seed, "random seed");

  auto* oracle = app.add_subcommand("oracle", "exhaustive best partition (at most 12 vertices)");
  add_graph(oracle);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (app.got_subcommand(evaluate)) return detail::cmd_evaluate(cfg, out);
    if (app.got_subcommand(stats)) return detail::cmd_stats(cfg, out);
    if (app.got_subcommand(report)) return detail::cmd_report(cfg, out);
    if (app.got_subcommand(compare)) return detail::cmd_compare(cfg, out);
    if (app.got_subcommand(rank)) return detail::cmd_rank(cfg, out);
    if (app.got_subcommand(generate)) return detail::cmd_generate(cfg, out);
    if (app.got_subcommand(oracle)) return detail::cmd_oracle(cfg, out);
  } catch (const CapabilityError& e) {
    err << "wcc: " << e.what() << '\n';
    return kRefused;
  } catch (const std::exception& e) {
    err << "wcc: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace wcc::cli
