#include "preach/generators.hpp"

#include "preach/error.hpp"
#include "preach/index.hpp"
#include "preach/query.hpp"
#include "preach/random.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace preach {

namespace {

Graph from_unique_edges(NodeId n, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::from_edges(n, edges);
}

} // namespace

Graph gen_random_dag(NodeId n, std::uint64_t m, std::uint64_t seed) {
  if (n == 0)
    throw InvalidArgument("random dag needs at least one node");
  if (n == kNoNode)
    throw InvalidArgument("node count exceeds the 32-bit id space");
  Rng rng(seed);
  std::vector<Edge> edges;
  if (n >= 2) {
    edges.reserve(m);
    while (edges.size() < m) {
      const auto a = static_cast<NodeId>(uniform_below(rng, n));
      const auto b = static_cast<NodeId>(uniform_below(rng, n));
      if (a != b)
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  return from_unique_edges(n, std::move(edges));
}

Graph gen_kronecker_dag(const KroneckerParams &params, std::uint64_t seed) {
  if (params.scale > 30)
    throw InvalidArgument("kronecker scale must be at most 30");
  double sum = 0;
  for (double p : params.skew) {
    if (!(p >= 0.0))
      throw InvalidArgument("kronecker skew entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidArgument("kronecker skew must sum to 1");

  const auto [a, b, c, d] = params.skew;
  (void)d;
  const NodeId n = NodeId{1} << params.scale;
  const std::uint64_t pairs = std::uint64_t{params.edge_factor} * n;
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(pairs);
  for (std::uint64_t i = 0; i < pairs; ++i) {
    NodeId u = 0, v = 0;
    for (std::uint32_t bit = 0; bit < params.scale; ++bit) {
      const double x = uniform_unit(rng);
      // Quadrants: A = (0,0), B = (0,1), C = (1,0), D = (1,1).
      const NodeId row = x >= a + b ? 1 : 0;
      const NodeId col = (x >= a && x < a + b) || x >= a + b + c ? 1 : 0;
      u = (u << 1) | row;
      v = (v << 1) | col;
    }
    if (u != v)
      edges.push_back({std::min(u, v), std::max(u, v)});
  }
  return from_unique_edges(n, std::move(edges));
}

std::string_view to_string(WorkloadKind kind) noexcept {
  switch (kind) {
  case WorkloadKind::Random:
    return "random";
  case WorkloadKind::Positive:
    return "positive";
  case WorkloadKind::Negative:
    return "negative";
  }
  return "unknown";
}

WorkloadKind parse_workload_kind(std::string_view name) {
  if (name == "random")
    return WorkloadKind::Random;
  if (name == "positive")
    return WorkloadKind::Positive;
  if (name == "negative")
    return WorkloadKind::Negative;
  throw InvalidArgument("unknown workload kind: " + std::string(name));
}

// Targets are drawn by rejection against the index; after a run of misses
// the exact reachable set is enumerated instead. Both routes pick uniformly
// from the same set, so the distribution is exact.
Workload gen_workload(const Graph &graph, WorkloadKind kind,
                      std::uint32_t count, std::uint64_t seed) {
  constexpr int kRejectionTries = 32;
  const NodeId n = graph.node_count();
  Workload w;
  w.kind = kind;
  w.seed = seed;
  w.pairs.reserve(count);
  if (count == 0)
    return w;
  if (n < 2)
    throw InvalidArgument("workload needs at least two nodes");

  Rng rng(seed);
  auto draw = [&](NodeId bound) {
    return static_cast<NodeId>(uniform_below(rng, bound));
  };

  if (kind == WorkloadKind::Random) {
    while (w.pairs.size() < count) {
      const NodeId s = draw(n), t = draw(n);
      if (s != t)
        w.pairs.push_back({s, t});
    }
    return w;
  }

  auto reaches_other = [&](NodeId s) {
    const auto succ = graph.successors(s);
    return std::any_of(succ.begin(), succ.end(),
                       [s](NodeId x) { return x != s; });
  };

  const ReachIndex index = build_index(graph);
  if (kind == WorkloadKind::Positive) {
    bool feasible = false;
    for (NodeId v = 0; v < n && !feasible; ++v)
      feasible = reaches_other(v);
    if (!feasible)
      throw InvalidArgument("graph has no positive query pair");
  } else if (index.node_count() == 1) {
    throw InvalidArgument("graph has no negative query pair");
  }

  const bool want = kind == WorkloadKind::Positive;
  SearchScratch scratch;
  std::vector<NodeId> candidates;
  while (w.pairs.size() < count) {
    const NodeId s = draw(n);
    if (want && !reaches_other(s))
      continue;
    NodeId t = kNoNode;
    for (int i = 0; i < kRejectionTries && t == kNoNode; ++i) {
      const NodeId x = draw(n);
      if (x != s && query(index, scratch, s, x).result == want)
        t = x;
    }
    if (t == kNoNode) {
      const std::vector<NodeId> reach = reachable_set(graph, s);
      candidates.clear();
      if (want) {
        for (NodeId x : reach)
          if (x != s)
            candidates.push_back(x);
        std::sort(candidates.begin(), candidates.end());
      } else {
        std::vector<char> reached(n, 0);
        for (NodeId x : reach)
          reached[x] = 1;
        for (NodeId x = 0; x < n; ++x)
          if (!reached[x])
            candidates.push_back(x);
      }
      if (candidates.empty())
        continue;
      t = candidates[draw(static_cast<NodeId>(candidates.size()))];
    }
    w.pairs.push_back({s, t});
  }
  return w;
}

void write_workload(const Workload &workload,
                    const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw Error("cannot open " + path.string() + " for writing");
  for (const QueryPair &p : workload.pairs)
    out << p.s << ' ' << p.t << '\n';
  if (!out)
    throw Error("write failed: " + path.string());
}

Workload load_workload(const std::filesystem::path &path, NodeId n,
                       WorkloadKind kind) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open " + path.string());
  Workload w;
  w.kind = kind;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::uint64_t s = 0, t = 0;
    std::string rest;
    if (!(fields >> s)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos)
        continue;
      throw ParseError("bad workload line " + std::to_string(line_no));
    }
    if (!(fields >> t) || (fields >> rest))
      throw ParseError("bad workload line " + std::to_string(line_no));
    if (s >= n || t >= n)
      throw ParseError("workload node out of range at line " +
                       std::to_string(line_no));
    w.pairs.push_back({static_cast<NodeId>(s), static_cast<NodeId>(t)});
  }
  return w;
}

} // namespace preach
