#pragma once

#include "preach/graph.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace preach {

enum class Direction { Forward, Backward };

// Node ordering of a reachability contraction hierarchy that only ever
// contracts current sources or sinks, and the induced edge split.
struct RchPartition {
  // order[v] in 1..n; contraction rank.
  std::vector<std::uint32_t> order;
  // Successors w of v with order[v] < order[w], sorted by id.
  std::vector<std::uint32_t> fwd_offsets{0};
  std::vector<NodeId> fwd_targets;
  // Predecessors u of v with order[u] > order[v], sorted by id.
  std::vector<std::uint32_t> bwd_offsets{0};
  std::vector<NodeId> bwd_targets;

  NodeId node_count() const noexcept {
    return static_cast<NodeId>(order.size());
  }
  std::span<const NodeId> forward(NodeId v) const noexcept {
    return {fwd_targets.data() + fwd_offsets[v],
            fwd_targets.data() + fwd_offsets[v + 1]};
  }
  std::span<const NodeId> backward(NodeId v) const noexcept {
    return {bwd_targets.data() + bwd_offsets[v],
            bwd_targets.data() + bwd_offsets[v + 1]};
  }

  friend bool operator==(const RchPartition &, const RchPartition &) = default;
};

// Contraction order: a min-priority queue of current sources and sinks keyed
// by (total degree in the input dag, node id). Throws CycleError if the
// input is not acyclic.
RchPartition compute_rch(const Graph &dag);

// Splits the dag edges by an existing order.
RchPartition partition_edges(const Graph &dag,
                             std::vector<std::uint32_t> order);

struct LevelData {
  // Longest path from a root of the traversal direction.
  std::vector<std::uint32_t> level;
  // Indexed by node; nonzero only for roots.
  std::vector<std::uint32_t> tree_size;
  // Roots by descending tree_size, ties by ascending id.
  std::vector<NodeId> root_order;
};

// Counter-driven DFS: a node is expanded once all of its incoming edges (in
// the traversal direction) have been scanned. Backward runs on the reversed
// dag, so the result holds backward levels. Throws CycleError.
LevelData compute_levels(const Graph &dag, Direction direction);

// DFS-numbering labels for one traversal direction. Ranges are inclusive.
struct DfsLabels {
  std::vector<std::uint32_t> phi;     // preorder number, 1..n
  std::vector<std::uint32_t> phi_hat; // last preorder number in the subtree
  std::vector<std::uint32_t> phi_min; // smallest number reachable
  std::vector<std::uint32_t> phi_gap; // (phi_gap, phi) holds nothing reachable
  std::vector<std::uint32_t> ptree_lo;
  std::vector<std::uint32_t> ptree_hi; // empty range (1, 0) if no candidate

  friend bool operator==(const DfsLabels &, const DfsLabels &) = default;
};

// Iterative DFS from `root_order`, scanning edges by ascending neighbor id.
// Nodes not reached from the listed roots are started in ascending id order.
// Throws CycleError if a back edge is found.
DfsLabels compute_dfs_labels(const Graph &dag, std::span<const NodeId> roots,
                             Direction direction);

} // namespace preach
