#pragma once

#include "preach/graph.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>
#include <vector>

namespace preach {

// n nodes, m independent uniform pairs a != b oriented min -> max, parallel
// edges dropped. Throws InvalidArgument for n == 0.
Graph gen_random_dag(NodeId n, std::uint64_t m, std::uint64_t seed);

struct KroneckerParams {
  std::uint32_t scale = 10;
  std::uint32_t edge_factor = 16;
  std::array<double, 4> skew{0.57, 0.19, 0.19, 0.05};
};

// Graph500-style R-MAT sampling on 2^scale nodes; each sampled pair becomes
// the edge (min, max), self-loops and duplicates removed.
Graph gen_kronecker_dag(const KroneckerParams &params, std::uint64_t seed);

enum class WorkloadKind { Random, Positive, Negative };

std::string_view to_string(WorkloadKind kind) noexcept;
WorkloadKind parse_workload_kind(std::string_view name);

struct QueryPair {
  NodeId s;
  NodeId t;
  friend bool operator==(const QueryPair &, const QueryPair &) = default;
};

struct Workload {
  std::vector<QueryPair> pairs;
  WorkloadKind kind = WorkloadKind::Random;
  std::uint64_t seed = 0;
};

// RANDOM: uniform s != t. POSITIVE: uniform s among nodes that reach some
// other node, then t uniform over what s reaches (minus s). NEGATIVE: uniform
// s, then t uniform over what s does not reach. Throws InvalidArgument when
// the graph admits no pair of the requested kind.
Workload gen_workload(const Graph &graph, WorkloadKind kind,
                      std::uint32_t count, std::uint64_t seed);

// "<s> <t>" per line.
void write_workload(const Workload &workload,
                    const std::filesystem::path &path);
Workload load_workload(const std::filesystem::path &path, NodeId n,
                       WorkloadKind kind = WorkloadKind::Random);

} // namespace preach
