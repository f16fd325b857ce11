#pragma once

#include "preach/graph.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace preach {

struct GraphStats {
  NodeId n = 0;
  EdgeCount m = 0;
  double density = 0.0;
  // Longest path of the condensed dag, in edges.
  std::uint32_t longest_path = 0;
  double positive_rate = 0.0;
};

// `samples` uniform pairs s != t drawn with `seed` estimate the fraction of
// positive queries; graphs with fewer than two nodes report 0.
GraphStats graph_stats(const Graph &graph, std::uint32_t samples = 100'000,
                       std::uint64_t seed = 1);

inline constexpr std::string_view kStatsCsvHeader =
    "name,n,m,density,d,positive_rate";
std::string to_csv_row(std::string_view name, const GraphStats &stats);

} // namespace preach
