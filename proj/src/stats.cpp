#include "preach/stats.hpp"

#include "preach/index.hpp"
#include "preach/query.hpp"
#include "preach/random.hpp"

#include <cstdio>

namespace preach {

GraphStats graph_stats(const Graph &graph, std::uint32_t samples,
                       std::uint64_t seed) {
  GraphStats stats;
  stats.n = graph.node_count();
  stats.m = graph.edge_count();
  stats.density = stats.n == 0 ? 0.0 : double(stats.m) / double(stats.n);
  if (stats.n == 0)
    return stats;

  CondensedDag condensed = condense(graph);
  stats.longest_path = longest_path_length(condensed.dag);
  if (stats.n < 2 || samples == 0)
    return stats;

  const ReachIndex index = build_index(std::move(condensed));
  SearchScratch scratch;
  Rng rng(seed);
  std::uint32_t positive = 0;
  for (std::uint32_t i = 0; i < samples;) {
    const auto s = static_cast<NodeId>(uniform_below(rng, stats.n));
    const auto t = static_cast<NodeId>(uniform_below(rng, stats.n));
    if (s == t)
      continue;
    positive += query(index, scratch, s, t).result;
    ++i;
  }
  stats.positive_rate = double(positive) / double(samples);
  return stats;
}

std::string to_csv_row(std::string_view name, const GraphStats &stats) {
  char buf[160];
  std::snprintf(buf, sizeof buf, ",%u,%u,%.4f,%u,%.6f", stats.n, stats.m,
                stats.density, stats.longest_path, stats.positive_rate);
  return std::string(name) + buf;
}

} // namespace preach
