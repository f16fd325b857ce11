#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <span>
#include <utility>
#include <vector>

namespace preach {

using NodeId = std::uint32_t;
using EdgeCount = std::uint32_t;

// Reserved; never a valid node id or count.
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct Edge {
  NodeId tail;
  NodeId head;
  friend bool operator==(const Edge &, const Edge &) = default;
  friend auto operator<=>(const Edge &, const Edge &) = default;
};

// Immutable directed graph in compressed sparse row form, with both the
// forward and the transposed adjacency. Adjacency lists are sorted by
// neighbor id; parallel edges are kept.
class Graph {
public:
  Graph() = default;

  // Builds the canonical form of an arbitrary edge list. Throws
  // InvalidArgument if an endpoint is >= n or the counts overflow 32 bits.
  static Graph from_edges(NodeId n, std::span<const Edge> edges);

  NodeId node_count() const noexcept { return n_; }
  EdgeCount edge_count() const noexcept {
    return static_cast<EdgeCount>(out_targets_.size());
  }

  std::span<const NodeId> successors(NodeId v) const noexcept {
    return {out_targets_.data() + out_offsets_[v],
            out_targets_.data() + out_offsets_[v + 1]};
  }
  std::span<const NodeId> predecessors(NodeId v) const noexcept {
    return {in_targets_.data() + in_offsets_[v],
            in_targets_.data() + in_offsets_[v + 1]};
  }
  std::uint32_t out_degree(NodeId v) const noexcept {
    return out_offsets_[v + 1] - out_offsets_[v];
  }
  std::uint32_t in_degree(NodeId v) const noexcept {
    return in_offsets_[v + 1] - in_offsets_[v];
  }

  // Edge list in canonical (tail, head) order.
  std::vector<Edge> edges() const;

  // Same nodes, every edge flipped.
  Graph reversed() const;

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  NodeId n_ = 0;
  std::vector<std::uint32_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::uint32_t> in_offsets_{0};
  std::vector<NodeId> in_targets_;
};

enum class GraphFormat { EdgeList, Gra };

// Throws ParseError (with the 1-based line number) on malformed input.
Graph load_graph(const std::filesystem::path &path, GraphFormat format);
Graph parse_graph(std::string_view text, GraphFormat format);

void write_graph(const Graph &graph, const std::filesystem::path &path,
                 GraphFormat format);
std::string format_graph(const Graph &graph, GraphFormat format);

// Strongly connected components collapsed into single nodes.
struct CondensedDag {
  Graph dag;
  std::vector<NodeId> component_of;
  NodeId component_count = 0;
};

// Iterative Tarjan. Components are numbered by their smallest member id, so
// an acyclic input keeps its node ids.
CondensedDag condense(const Graph &graph);

// Length of the longest path (in edges). Throws CycleError on cyclic input.
std::uint32_t longest_path_length(const Graph &dag);

} // namespace preach
