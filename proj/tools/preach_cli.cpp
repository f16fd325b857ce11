// preach: build reachability indices, answer queries, run benchmarks and
// generate instances.

#include "preach/bench.hpp"
#include "preach/error.hpp"
#include "preach/generators.hpp"
#include "preach/index.hpp"
#include "preach/query.hpp"
#include "preach/stats.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace preach;

namespace {

GraphFormat parse_format(const std::string &name) {
  if (name == "edge_list" || name == "edgelist")
    return GraphFormat::EdgeList;
  if (name == "gra")
    return GraphFormat::Gra;
  throw InvalidArgument("unknown graph format: " + name);
}

// Writes to `path`, or stdout when the path is empty.
class Output {
public:
  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_)
        throw Error("cannot open " + path + " for writing");
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

private:
  std::unique_ptr<std::ofstream> file_;
};

std::string stem_of(const std::string &path) {
  return std::filesystem::path(path).stem().string();
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"PReaCH reachability index and benchmark harness"};
  app.require_subcommand(1);

  std::string graph_path, format_name = "edge_list", index_in, index_out;
  std::string algo_names = "preach", kind_name = "random", csv_path;
  std::string graph_name;
  std::uint32_t count = 100'000, reps = 1, threads = 1;
  std::uint64_t seed = 1;

  auto add_graph = [&](CLI::App *cmd, bool required) {
    auto *opt = cmd->add_option("--graph", graph_path, "input graph file");
    if (required)
      opt->required();
    cmd->add_option("--format", format_name, "edge_list or gra")
        ->capture_default_str();
  };
  auto add_workload = [&](CLI::App *cmd) {
    cmd->add_option("--workload-kind", kind_name,
                    "random, positive or negative")
        ->capture_default_str();
    cmd->add_option("--count", count, "queries per workload")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "workload seed")->capture_default_str();
  };

  // build
  auto *build = app.add_subcommand("build", "build an index");
  add_graph(build, true);
  build->add_option("--index-out", index_out, "write the index here");
  build->add_option("--reps", reps, "build repetitions (best time reported)")
      ->capture_default_str();

  // query
  NodeId qs = 0, qt = 0;
  auto *query_cmd = app.add_subcommand("query", "answer one query");
  add_graph(query_cmd, false);
  query_cmd->add_option("--index-in", index_in, "load a saved index");
  query_cmd->add_option("s", qs)->required();
  query_cmd->add_option("t", qt)->required();
  query_cmd->add_option("--algo", algo_names, "index-based algorithm")
      ->capture_default_str();

  // bench / dist
  std::string workload_path;
  auto *bench = app.add_subcommand("bench", "time a query workload");
  add_graph(bench, true);
  add_workload(bench);
  bench->add_option("--algo", algo_names, "comma-separated algorithms")
      ->capture_default_str();
  bench->add_option("--reps", reps, "construction repetitions")
      ->capture_default_str();
  bench->add_option("--threads", threads, "shard the workload (throughput)")
      ->capture_default_str();
  bench->add_option("--csv", csv_path, "output CSV (default stdout)");
  bench->add_option("--name", graph_name, "graph column value");
  bench->add_option("--workload", workload_path,
                    "use pairs from this file instead of generating");

  auto *dist = app.add_subcommand("dist", "per-query time distribution");
  add_graph(dist, true);
  add_workload(dist);
  dist->add_option("--algo", algo_names, "comma-separated algorithms")
      ->capture_default_str();
  dist->add_option("--csv", csv_path, "output CSV (default stdout)");
  dist->add_option("--name", graph_name, "graph column value");

  // scale
  std::string family_name = "size";
  ScalingParams scaling;
  auto *scale = app.add_subcommand("scale", "construction scaling sweep");
  scale->add_option("--family", family_name, "density or size")
      ->capture_default_str();
  scale->add_option("--nodes", scaling.nodes, "node count (density sweep)")
      ->capture_default_str();
  scale->add_option("--min-exp", scaling.min_exp, "smallest n = 10^k")
      ->capture_default_str();
  scale->add_option("--max-exp", scaling.max_exp, "largest n = 10^k")
      ->capture_default_str();
  scale->add_option("--count", scaling.query_count, "queries per point")
      ->capture_default_str();
  scale->add_option("--reps", scaling.repetitions, "build repetitions")
      ->capture_default_str();
  scale->add_option("--seed", seed, "generator seed")->capture_default_str();
  scale->add_option("--csv", csv_path, "output CSV (default stdout)");

  // stats
  std::uint32_t samples = 100'000;
  auto *stats = app.add_subcommand("stats", "graph statistics CSV row");
  add_graph(stats, true);
  stats->add_option("--samples", samples, "pairs for positive_rate")
      ->capture_default_str();
  stats->add_option("--seed", seed, "sampling seed")->capture_default_str();
  stats->add_option("--name", graph_name, "name column value");
  stats->add_flag("--header", "print the CSV header first");

  // gen
  auto *gen = app.add_subcommand("gen", "generate graphs and workloads");
  gen->require_subcommand(1);
  std::string out_path;
  NodeId gen_nodes = 0;
  std::uint64_t gen_edges = 0;
  auto *gen_random = gen->add_subcommand("random", "random DAG");
  gen_random->add_option("--nodes", gen_nodes)->required();
  gen_random->add_option("--edges", gen_edges)->required();
  gen_random->add_option("--seed", seed)->capture_default_str();
  gen_random->add_option("--out", out_path)->required();

  KroneckerParams kron;
  std::string skew_text;
  auto *gen_kron = gen->add_subcommand("kron", "R-MAT Kronecker DAG");
  gen_kron->add_option("--scale", kron.scale)->required();
  gen_kron->add_option("--edge-factor", kron.edge_factor)
      ->capture_default_str();
  gen_kron->add_option("--seed", seed)->capture_default_str();
  gen_kron->add_option("--skew", skew_text, "A,B,C,D");
  gen_kron->add_option("--out", out_path)->required();

  auto *gen_work = gen->add_subcommand("workload", "query workload");
  add_graph(gen_work, true);
  add_workload(gen_work);
  gen_work->add_option("--out", out_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const auto load = [&] {
      return load_graph(graph_path, parse_format(format_name));
    };
    const std::string name =
        graph_name.empty() ? stem_of(graph_path) : graph_name;

    if (*build) {
      const Graph graph = load();
      ReachIndex index;
      double best_ms = 0;
      for (std::uint32_t i = 0; i < std::max(reps, 1u); ++i) {
        const auto start = std::chrono::steady_clock::now();
        index = build_index(graph);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        best_ms = i == 0 ? ms : std::min(best_ms, ms);
      }
      std::printf("n=%u m=%u dag_n=%u dag_m=%u construction_ms=%.3f "
                  "footprint_bytes=%llu\n",
                  graph.node_count(), graph.edge_count(), index.node_count(),
                  index.edge_count(), best_ms,
                  static_cast<unsigned long long>(index_footprint(index)));
      if (!index_out.empty())
        index.save(index_out);
    } else if (*query_cmd) {
      ReachIndex index;
      if (!index_in.empty())
        index = ReachIndex::load(index_in);
      else if (!graph_path.empty())
        index = build_index(load());
      else
        throw InvalidArgument("query needs --graph or --index-in");
      const Algorithm algo = parse_algorithm(algo_names);
      const auto heuristics = heuristics_of(algo);
      if (!heuristics)
        throw InvalidArgument("query supports index-based algorithms only");
      index.set_config(*heuristics);
      SearchScratch scratch;
      const QueryStats st = query(index, scratch, qs, qt);
      std::printf("%s settled_by=%s visited_fwd=%u visited_bwd=%u\n",
                  st.result ? "true" : "false", to_string(st.settled_by),
                  st.visited_fwd, st.visited_bwd);
    } else if (*bench) {
      const Graph graph = load();
      BenchConfig config;
      config.graph_name = name;
      config.algorithms = parse_algorithms(algo_names);
      config.kind = parse_workload_kind(kind_name);
      config.count = count;
      config.seed = seed;
      config.repetitions = reps;
      config.threads = threads;
      std::vector<BenchRecord> records;
      if (workload_path.empty()) {
        records = run_bench(graph, config);
      } else {
        Workload w =
            load_workload(workload_path, graph.node_count(), config.kind);
        records = run_bench(graph, config, w);
      }
      Output out(csv_path);
      out.stream() << kBenchCsvHeader << '\n';
      for (const BenchRecord &r : records)
        out.stream() << to_csv_row(r) << '\n';
    } else if (*dist) {
      const Graph graph = load();
      BenchConfig config;
      config.graph_name = name;
      config.algorithms = parse_algorithms(algo_names);
      config.kind = parse_workload_kind(kind_name);
      config.count = count;
      config.seed = seed;
      const DistributionSummary summary = run_distribution(graph, config);
      Output out(csv_path);
      write_distribution_csv(summary, name, out.stream());
      for (std::size_t i = 0; i < config.algorithms.size(); ++i)
        std::fprintf(stderr, "%s max/median=%.2f\n",
                     std::string(to_string(config.algorithms[i])).c_str(),
                     summary.max_over_median[i]);
    } else if (*scale) {
      ScalingFamily family;
      if (family_name == "density")
        family = ScalingFamily::Density;
      else if (family_name == "size")
        family = ScalingFamily::Size;
      else
        throw InvalidArgument("unknown scaling family: " + family_name);
      const auto points = run_scaling(family, scaling, seed);
      Output out(csv_path);
      out.stream() << kScalingCsvHeader << '\n';
      for (const ScalingPoint &p : points)
        out.stream() << to_csv_row(family, p) << '\n';
    } else if (*stats) {
      const GraphStats s = graph_stats(load(), samples, seed);
      if (stats->count("--header"))
        std::cout << kStatsCsvHeader << '\n';
      std::cout << to_csv_row(name, s) << '\n';
    } else if (*gen_random) {
      write_graph(gen_random_dag(gen_nodes, gen_edges, seed), out_path,
                  GraphFormat::EdgeList);
    } else if (*gen_kron) {
      if (!skew_text.empty()) {
        std::istringstream in(skew_text);
        std::string field;
        for (double &p : kron.skew) {
          if (!std::getline(in, field, ','))
            throw InvalidArgument("--skew needs four comma-separated values");
          p = std::stod(field);
        }
        if (std::getline(in, field, ','))
          throw InvalidArgument("--skew needs four comma-separated values");
      }
      write_graph(gen_kronecker_dag(kron, seed), out_path,
                  GraphFormat::EdgeList);
    } else if (*gen_work) {
      const Graph graph = load();
      write_workload(
          gen_workload(graph, parse_workload_kind(kind_name), count, seed),
          out_path);
    }
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
