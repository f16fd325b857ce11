#pragma once

#include "preach/generators.hpp"
#include "preach/graph.hpp"
#include "preach/index.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace preach {

enum class Algorithm { Preach, RchOnly, LevelsOnly, DfsOnly, Bfs, BidirBfs };

std::string_view to_string(Algorithm algo) noexcept;
// Throws InvalidArgument for unknown names.
Algorithm parse_algorithm(std::string_view name);
// Comma-separated list.
std::vector<Algorithm> parse_algorithms(std::string_view names);

// Heuristic flags of an index-based algorithm; nullopt for the BFS baselines.
std::optional<HeuristicConfig> heuristics_of(Algorithm algo) noexcept;

struct BenchConfig {
  std::string graph_name = "graph";
  std::vector<Algorithm> algorithms{Algorithm::Preach, Algorithm::BidirBfs};
  WorkloadKind kind = WorkloadKind::Random;
  std::uint32_t count = 100'000;
  std::uint64_t seed = 1;
  std::uint32_t repetitions = 1;
  // > 1 shards the workload for throughput; per-query latency columns are
  // then reported as 0.
  std::uint32_t threads = 1;
};

struct BenchRecord {
  std::string graph;
  Algorithm algorithm = Algorithm::Preach;
  WorkloadKind kind = WorkloadKind::Random;
  std::uint32_t count = 0;
  double mean_ns = 0;
  double median_ns = 0;
  double p99_ns = 0;
  double max_ns = 0;
  double mean_visited = 0;
  double construction_ms = 0;
  std::uint64_t footprint_bytes = 0;
};

inline constexpr std::string_view kBenchCsvHeader =
    "graph,algo,kind,count,mean_ns,median_ns,p99_ns,max_ns,mean_visited,"
    "construction_ms,footprint_bytes";

std::string to_csv_row(const BenchRecord &record);

// Builds each needed structure (timed, best of `repetitions`), runs the same
// pinned workload through every algorithm and cross-checks the answers.
// Throws Error naming the first pair on which two algorithms disagree.
std::vector<BenchRecord> run_bench(const Graph &graph,
                                   const BenchConfig &config);

// Same as run_bench but on a caller-supplied workload.
std::vector<BenchRecord> run_bench(const Graph &graph,
                                   const BenchConfig &config,
                                   const Workload &workload);

struct DistributionRow {
  Algorithm algorithm;
  std::uint32_t query;
  QueryPair pair;
  bool result;
  double time_ns;
};

struct DistributionSummary {
  std::vector<DistributionRow> rows;
  // Per algorithm, in config order.
  std::vector<double> max_over_median;
};

inline constexpr std::string_view kDistributionCsvHeader =
    "graph,algo,query,s,t,result,time_ns";

// Times every query individually.
DistributionSummary run_distribution(const Graph &graph,
                                     const BenchConfig &config);
void write_distribution_csv(const DistributionSummary &summary,
                            std::string_view graph_name, std::ostream &out);

enum class ScalingFamily { Density, Size };

struct ScalingParams {
  // Density sweep: fixed node count.
  NodeId nodes = 100'000;
  // Size sweep: n = 10^k for k in [min_exp, max_exp].
  std::uint32_t min_exp = 4;
  std::uint32_t max_exp = 6;
  std::uint32_t size_density = 8;
  std::uint32_t query_count = 10'000;
  std::uint32_t repetitions = 1;
};

struct ScalingPoint {
  NodeId n = 0;
  EdgeCount m = 0;
  double density = 0;
  double construction_ms = 0;
  double construction_ns_per_edge = 0;
  double mean_query_ns = 0;
  std::string status = "ok";
};

inline constexpr std::string_view kScalingCsvHeader =
    "family,n,m,density,construction_ms,construction_ns_per_edge,"
    "mean_query_ns,status";

std::vector<ScalingPoint> run_scaling(ScalingFamily family,
                                      const ScalingParams &params,
                                      std::uint64_t seed);
std::string to_csv_row(ScalingFamily family, const ScalingPoint &point);

} // namespace preach
