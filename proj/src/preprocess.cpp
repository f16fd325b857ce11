#include "preach/preprocess.hpp"

#include "preach/error.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace preach {

namespace {

// Adjacency of the dag as seen by a traversal in `direction`.
struct DirectedView {
  const Graph &dag;
  Direction direction;

  std::span<const NodeId> out(NodeId v) const {
    return direction == Direction::Forward ? dag.successors(v)
                                           : dag.predecessors(v);
  }
  std::uint32_t in_degree(NodeId v) const {
    return direction == Direction::Forward ? dag.in_degree(v)
                                           : dag.out_degree(v);
  }
};

} // namespace

// ---------------------------------------------------------------------------
// Contraction order

RchPartition compute_rch(const Graph &dag) {
  const NodeId n = dag.node_count();
  std::vector<std::uint32_t> in_left(n), out_left(n);
  std::vector<char> queued(n, 0);

  using Entry = std::pair<std::uint64_t, NodeId>; // (input degree, id)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto push = [&](NodeId v) {
    queued[v] = 1;
    queue.emplace(std::uint64_t{dag.in_degree(v)} + dag.out_degree(v), v);
  };

  for (NodeId v = 0; v < n; ++v) {
    in_left[v] = dag.in_degree(v);
    out_left[v] = dag.out_degree(v);
    if (in_left[v] == 0 || out_left[v] == 0)
      push(v);
  }

  std::vector<std::uint32_t> order(n, 0);
  std::uint32_t rank = 0;
  while (!queue.empty()) {
    const NodeId v = queue.top().second;
    queue.pop();
    order[v] = ++rank;
    // Neighbors already contracted have a nonzero rank; their counters no
    // longer matter.
    for (NodeId w : dag.successors(v))
      if (order[w] == 0 && --in_left[w] == 0 && !queued[w])
        push(w);
    for (NodeId u : dag.predecessors(v))
      if (order[u] == 0 && --out_left[u] == 0 && !queued[u])
        push(u);
  }
  if (rank != n)
    throw CycleError();
  return partition_edges(dag, std::move(order));
}

RchPartition partition_edges(const Graph &dag,
                             std::vector<std::uint32_t> order) {
  const NodeId n = dag.node_count();
  if (order.size() != n)
    throw InvalidArgument("order length does not match the node count");
  RchPartition p;
  p.order = std::move(order);
  p.fwd_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  p.bwd_offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : dag.successors(v))
      if (p.order[v] < p.order[w])
        p.fwd_targets.push_back(w);
    p.fwd_offsets[v + 1] = static_cast<std::uint32_t>(p.fwd_targets.size());
    for (NodeId u : dag.predecessors(v))
      if (p.order[u] > p.order[v])
        p.bwd_targets.push_back(u);
    p.bwd_offsets[v + 1] = static_cast<std::uint32_t>(p.bwd_targets.size());
  }
  p.fwd_targets.shrink_to_fit();
  p.bwd_targets.shrink_to_fit();
  return p;
}

// ---------------------------------------------------------------------------
// Topological levels

LevelData compute_levels(const Graph &dag, Direction direction) {
  const DirectedView view{dag, direction};
  const NodeId n = dag.node_count();
  LevelData data;
  data.level.assign(n, 0);
  data.tree_size.assign(n, 0);

  std::vector<std::uint32_t> unexplored(n);
  for (NodeId v = 0; v < n; ++v)
    unexplored[v] = view.in_degree(v);

  std::vector<NodeId> stack;
  NodeId completed = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (view.in_degree(root) != 0)
      continue;
    data.root_order.push_back(root);
    std::uint32_t size = 0;
    stack.push_back(root);
    while (!stack.empty()) {
      const NodeId u = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId v : view.out(u)) {
        data.level[v] = std::max(data.level[v], data.level[u] + 1);
        if (--unexplored[v] == 0)
          stack.push_back(v);
      }
    }
    data.tree_size[root] = size;
    completed += size;
  }
  if (completed != n)
    throw CycleError();

  std::stable_sort(data.root_order.begin(), data.root_order.end(),
                   [&](NodeId a, NodeId b) {
                     return data.tree_size[a] > data.tree_size[b];
                   });
  return data;
}

// ---------------------------------------------------------------------------
// DFS labels

DfsLabels compute_dfs_labels(const Graph &dag, std::span<const NodeId> roots,
                             Direction direction) {
  const DirectedView view{dag, direction};
  const NodeId n = dag.node_count();
  DfsLabels l;
  l.phi.assign(n, 0);
  l.phi_hat.assign(n, 0);
  l.phi_min.assign(n, 0);
  l.phi_gap.assign(n, 0);
  l.ptree_lo.assign(n, 1);
  l.ptree_hi.assign(n, 0);

  enum : char { kWhite, kGray, kBlack };
  std::vector<char> color(n, kWhite);
  struct Frame {
    NodeId node;
    std::uint32_t next_edge;
  };
  std::vector<Frame> stack;
  std::uint32_t counter = 0;

  auto discover = [&](NodeId v) {
    color[v] = kGray;
    l.phi[v] = l.phi_min[v] = ++counter;
    stack.push_back({v, 0});
  };

  // Folds a finished successor w into the running labels of v. Range
  // candidates that start at or after phi(v) lie in v's own subtree and are
  // useless for v.
  auto absorb = [&](NodeId v, NodeId w) {
    l.phi_min[v] = std::min(l.phi_min[v], l.phi_min[w]);
    l.phi_gap[v] = std::max(l.phi_gap[v], l.phi_gap[w]);
    auto offer = [&](std::uint32_t lo, std::uint32_t hi) {
      if (lo > hi || lo >= l.phi[v])
        return;
      const std::uint32_t best_lo = l.ptree_lo[v], best_hi = l.ptree_hi[v];
      const bool have = best_lo <= best_hi;
      if (!have || hi - lo > best_hi - best_lo ||
          (hi - lo == best_hi - best_lo && lo < best_lo)) {
        l.ptree_lo[v] = lo;
        l.ptree_hi[v] = hi;
      }
    };
    offer(l.ptree_lo[w], l.ptree_hi[w]);
    if (l.phi[w] < l.phi[v]) {
      l.phi_gap[v] = std::max(l.phi_gap[v], l.phi_hat[w]);
      offer(l.phi[w], l.phi_hat[w]);
    }
  };

  auto run_from = [&](NodeId root) {
    if (color[root] != kWhite)
      return;
    discover(root);
    while (!stack.empty()) {
      Frame &frame = stack.back();
      const NodeId v = frame.node;
      const auto out = view.out(v);
      if (frame.next_edge < out.size()) {
        const NodeId w = out[frame.next_edge++];
        if (color[w] == kWhite)
          discover(w);
        else if (color[w] == kGray)
          throw CycleError();
        else
          absorb(v, w);
        continue;
      }
      color[v] = kBlack;
      l.phi_hat[v] = counter;
      stack.pop_back();
      if (!stack.empty())
        absorb(stack.back().node, v);
    }
  };

  for (NodeId root : roots) {
    if (root >= n)
      throw InvalidArgument("root id out of range");
    run_from(root);
  }
  for (NodeId v = 0; v < n; ++v)
    run_from(v);
  return l;
}

} // namespace preach
