#pragma once

#include "preach/graph.hpp"
#include "preach/preprocess.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace preach {

// Which pruning families a query may use. Every part of the index is always
// built; the flags only gate query-time tests.
struct HeuristicConfig {
  bool use_rch = true;
  bool use_levels = true;
  bool use_dfs = true;

  friend bool operator==(const HeuristicConfig &,
                         const HeuristicConfig &) = default;
};

// Per-direction DFS labels of one node.
struct DirectionLabels {
  std::uint32_t phi;
  std::uint32_t phi_hat;
  std::uint32_t phi_min;
  std::uint32_t phi_gap;
  std::uint32_t ptree_lo;
  std::uint32_t ptree_hi;
};

// Everything a query touches for one node, in a single cache line. The
// forward edges of v occupy [fwd_begin, bwd_begin) of the shared edge array;
// its backward edges run up to the next node's fwd_begin.
struct alignas(64) NodeRecord {
  std::uint32_t fwd_begin;
  std::uint32_t bwd_begin;
  std::uint32_t level;
  std::uint32_t back_level;
  DirectionLabels fwd;
  DirectionLabels bwd;
};
static_assert(sizeof(NodeRecord) == 64);

class ReachIndex {
public:
  ReachIndex() = default;

  // Assembles the query layout from already computed parts of a dag.
  ReachIndex(std::shared_ptr<const CondensedDag> condensed,
             const RchPartition &rch, const LevelData &levels,
             const LevelData &back_levels, const DfsLabels &fwd_labels,
             const DfsLabels &bwd_labels, HeuristicConfig config);

  HeuristicConfig config() const noexcept { return config_; }
  void set_config(HeuristicConfig config) noexcept { config_ = config; }

  const CondensedDag &condensed() const noexcept { return *condensed_; }
  const Graph &dag() const noexcept { return condensed_->dag; }
  // Node count of the input graph (before condensation).
  NodeId original_node_count() const noexcept {
    return static_cast<NodeId>(condensed_->component_of.size());
  }
  NodeId component_of(NodeId v) const noexcept {
    return condensed_->component_of[v];
  }

  NodeId node_count() const noexcept {
    return static_cast<NodeId>(records_.size());
  }
  EdgeCount edge_count() const noexcept {
    return static_cast<EdgeCount>(edges_.size());
  }

  const NodeRecord &record(NodeId v) const noexcept { return records_[v]; }
  std::span<const NodeId> forward_edges(NodeId v) const noexcept {
    const NodeRecord &r = records_[v];
    return {edges_.data() + r.fwd_begin, edges_.data() + r.bwd_begin};
  }
  std::span<const NodeId> backward_edges(NodeId v) const noexcept {
    const std::uint32_t end =
        v + 1 < records_.size() ? records_[v + 1].fwd_begin
                                : static_cast<std::uint32_t>(edges_.size());
    return {edges_.data() + records_[v].bwd_begin, edges_.data() + end};
  }

  // Views in the build-time shapes; materialized on demand.
  RchPartition rch() const;
  DfsLabels labels(Direction direction) const;
  std::vector<std::uint32_t> levels(Direction direction) const;

  // Bytes of the arrays this index holds for queries (records, edges,
  // contraction order); the condensed dag and component map are excluded.
  std::size_t resident_bytes() const noexcept;

  // Binary persistence; see README for the layout.
  std::string serialize() const;
  static ReachIndex deserialize(std::string_view bytes);
  void save(const std::filesystem::path &path) const;
  static ReachIndex load(const std::filesystem::path &path);

private:
  std::shared_ptr<const CondensedDag> condensed_ =
      std::make_shared<CondensedDag>();
  std::vector<NodeRecord> records_;
  std::vector<NodeId> edges_;
  std::vector<std::uint32_t> order_;
  HeuristicConfig config_;
};

// Condense, then compute contraction order, levels and DFS labels in both
// directions.
ReachIndex build_index(const Graph &graph, HeuristicConfig config = {});
ReachIndex build_index(CondensedDag condensed, HeuristicConfig config = {});

// Modeled size: 4 bytes per dag edge, 64 per dag node.
std::uint64_t index_footprint(const ReachIndex &index) noexcept;

} // namespace preach
