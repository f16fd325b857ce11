#pragma once

#include "preach/graph.hpp"
#include "preach/index.hpp"

#include <cstdint>
#include <vector>

namespace preach {

// Per-query visited markers. A node is visited in a direction iff its stamp
// equals the current epoch, so starting a query costs O(1).
class SearchScratch {
public:
  SearchScratch() = default;
  explicit SearchScratch(NodeId n) { resize(n); }

  void resize(NodeId n);
  NodeId size() const noexcept {
    return static_cast<NodeId>(fwd_stamp_.size());
  }

  // Advances the epoch; zeroes the stamps when the counter wraps.
  void begin_query();
  std::uint32_t epoch() const noexcept { return epoch_; }

  bool seen_fwd(NodeId v) const noexcept { return fwd_stamp_[v] == epoch_; }
  bool seen_bwd(NodeId v) const noexcept { return bwd_stamp_[v] == epoch_; }
  void mark_fwd(NodeId v) noexcept { fwd_stamp_[v] = epoch_; }
  void mark_bwd(NodeId v) noexcept { bwd_stamp_[v] = epoch_; }

  // Used by tests to exercise the wraparound path.
  void set_epoch_for_testing(std::uint32_t epoch) noexcept { epoch_ = epoch; }

  std::vector<NodeId> fwd_queue;
  std::vector<NodeId> bwd_queue;

private:
  std::vector<std::uint32_t> fwd_stamp_;
  std::vector<std::uint32_t> bwd_stamp_;
  std::uint32_t epoch_ = 0;
};

enum class SettledBy { SEqT, InitialPrune, FullInterval, Meet, Exhausted };

const char *to_string(SettledBy s) noexcept;

struct QueryStats {
  bool result = false;
  SettledBy settled_by = SettledBy::Exhausted;
  std::uint32_t visited_fwd = 0;
  std::uint32_t visited_bwd = 0;
  std::uint32_t enqueued_fwd = 0;
  std::uint32_t enqueued_bwd = 0;

  friend bool operator==(const QueryStats &, const QueryStats &) = default;
};

enum class Prune { PositiveStop, Prune, Continue };

// Tests for the forward search: may v (a dag node) reach t? Positive rules
// are checked before negative ones.
Prune prune_forward(const ReachIndex &index, NodeId v, NodeId t) noexcept;

// Mirror for the backward search: may s reach v?
Prune prune_backward(const ReachIndex &index, NodeId v, NodeId s) noexcept;

// Reachability between two input-graph nodes. `scratch` is resized on
// demand. Throws InvalidArgument for ids outside the input graph.
QueryStats query(const ReachIndex &index, SearchScratch &scratch, NodeId s,
                 NodeId t);

// Baselines on a plain graph.
bool bfs_query(const Graph &graph, NodeId s, NodeId t);
// Forward BFS reusing `scratch`; counts dequeued nodes in visited_fwd.
QueryStats bfs_search(const Graph &graph, SearchScratch &scratch, NodeId s,
                      NodeId t);
QueryStats bidir_bfs_query(const Graph &graph, SearchScratch &scratch,
                           NodeId s, NodeId t);

// Every node reachable from s, including s, in BFS order.
std::vector<NodeId> reachable_set(const Graph &graph, NodeId s);

} // namespace preach
