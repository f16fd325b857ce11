#include "preach/query.hpp"

#include "preach/error.hpp"

#include <algorithm>

namespace preach {

void SearchScratch::resize(NodeId n) {
  fwd_stamp_.assign(n, 0);
  bwd_stamp_.assign(n, 0);
  epoch_ = 0;
  fwd_queue.clear();
  bwd_queue.clear();
  fwd_queue.reserve(n);
  bwd_queue.reserve(n);
}

void SearchScratch::begin_query() {
  if (++epoch_ == 0) {
    std::fill(fwd_stamp_.begin(), fwd_stamp_.end(), 0);
    std::fill(bwd_stamp_.begin(), bwd_stamp_.end(), 0);
    epoch_ = 1;
  }
  fwd_queue.clear();
  bwd_queue.clear();
}

const char *to_string(SettledBy s) noexcept {
  switch (s) {
  case SettledBy::SEqT:
    return "s_eq_t";
  case SettledBy::InitialPrune:
    return "initial_prune";
  case SettledBy::FullInterval:
    return "full_interval";
  case SettledBy::Meet:
    return "meet";
  case SettledBy::Exhausted:
    return "exhausted";
  }
  return "unknown";
}

namespace {

bool in_range(std::uint32_t x, std::uint32_t lo, std::uint32_t hi) noexcept {
  return lo <= x && x <= hi;
}

// One set of label tests; `target_phi` is the other endpoint's number in the
// same direction's DFS.
Prune test_labels(const DirectionLabels &lv, std::uint32_t target_phi,
                  bool level_excludes, HeuristicConfig config) noexcept {
  if (config.use_dfs) {
    if (in_range(target_phi, lv.phi, lv.phi_hat) ||
        in_range(target_phi, lv.ptree_lo, lv.ptree_hi))
      return Prune::PositiveStop;
  }
  if (config.use_levels && level_excludes)
    return Prune::Prune;
  if (config.use_dfs) {
    if (target_phi > lv.phi_hat || target_phi < lv.phi_min ||
        (lv.phi_gap < target_phi && target_phi < lv.phi))
      return Prune::Prune;
  }
  return Prune::Continue;
}

// Issues the loads for every neighbor's record up front so that the misses
// overlap instead of being paid one by one in the test loop.
void prefetch_records(const ReachIndex &index,
                      std::span<const NodeId> nodes) noexcept {
  for (NodeId w : nodes)
    __builtin_prefetch(&index.record(w));
}

} // namespace

Prune prune_forward(const ReachIndex &index, NodeId v, NodeId t) noexcept {
  if (v == t)
    return Prune::PositiveStop;
  const NodeRecord &rv = index.record(v);
  const NodeRecord &rt = index.record(t);
  const bool level_excludes =
      rv.level >= rt.level || rv.back_level <= rt.back_level;
  return test_labels(rv.fwd, rt.fwd.phi, level_excludes,
                     index.config());
}

Prune prune_backward(const ReachIndex &index, NodeId v, NodeId s) noexcept {
  if (v == s)
    return Prune::PositiveStop;
  const NodeRecord &rv = index.record(v);
  const NodeRecord &rs = index.record(s);
  const bool level_excludes =
      rv.level <= rs.level || rv.back_level >= rs.back_level;
  return test_labels(rv.bwd, rs.bwd.phi, level_excludes,
                     index.config());
}

QueryStats query(const ReachIndex &index, SearchScratch &scratch, NodeId s,
                 NodeId t) {
  if (s >= index.original_node_count() || t >= index.original_node_count())
    throw InvalidArgument("query node id out of range");
  QueryStats stats;
  const NodeId cs = index.component_of(s);
  const NodeId ct = index.component_of(t);
  auto settle = [&](bool result, SettledBy by) {
    stats.result = result;
    stats.settled_by = by;
    return stats;
  };
  if (cs == ct)
    return settle(true, SettledBy::SEqT);

  const HeuristicConfig config = index.config();
  switch (prune_forward(index, cs, ct)) {
  case Prune::PositiveStop:
    return settle(true, SettledBy::FullInterval);
  case Prune::Prune:
    return settle(false, SettledBy::InitialPrune);
  case Prune::Continue:
    break;
  }
  switch (prune_backward(index, ct, cs)) {
  case Prune::PositiveStop:
    return settle(true, SettledBy::FullInterval);
  case Prune::Prune:
    return settle(false, SettledBy::InitialPrune);
  case Prune::Continue:
    break;
  }

  if (scratch.size() != index.node_count())
    scratch.resize(index.node_count());
  scratch.begin_query();
  auto &fq = scratch.fwd_queue;
  auto &bq = scratch.bwd_queue;
  std::size_t fhead = 0, bhead = 0;
  scratch.mark_fwd(cs);
  fq.push_back(cs);
  scratch.mark_bwd(ct);
  bq.push_back(ct);
  stats.enqueued_fwd = stats.enqueued_bwd = 1;

  const Graph &dag = index.dag();
  const bool up_down = config.use_rch;

  while (fhead < fq.size() || bhead < bq.size()) {
    if (!up_down && (fhead == fq.size() || bhead == bq.size()))
      break;
    if (fhead < fq.size()) {
      const NodeId u = fq[fhead++];
      ++stats.visited_fwd;
      const auto out = up_down ? index.forward_edges(u) : dag.successors(u);
      prefetch_records(index, out);
      for (NodeId w : out) {
        if (scratch.seen_fwd(w))
          continue;
        if (scratch.seen_bwd(w)) {
          scratch.mark_fwd(w);
          return settle(true, SettledBy::Meet);
        }
        const Prune p = prune_forward(index, w, ct);
        if (p == Prune::PositiveStop)
          return settle(true, SettledBy::FullInterval);
        if (p == Prune::Prune)
          continue;
        scratch.mark_fwd(w);
        fq.push_back(w);
        ++stats.enqueued_fwd;
      }
    }
    if (!up_down && fhead == fq.size())
      break;
    if (bhead < bq.size()) {
      const NodeId u = bq[bhead++];
      ++stats.visited_bwd;
      const auto in = up_down ? index.backward_edges(u) : dag.predecessors(u);
      prefetch_records(index, in);
      for (NodeId w : in) {
        if (scratch.seen_bwd(w))
          continue;
        if (scratch.seen_fwd(w)) {
          scratch.mark_bwd(w);
          return settle(true, SettledBy::Meet);
        }
        const Prune p = prune_backward(index, w, cs);
        if (p == Prune::PositiveStop)
          return settle(true, SettledBy::FullInterval);
        if (p == Prune::Prune)
          continue;
        scratch.mark_bwd(w);
        bq.push_back(w);
        ++stats.enqueued_bwd;
      }
    }
  }
  return settle(false, SettledBy::Exhausted);
}

// ---------------------------------------------------------------------------
// Baselines

namespace {

void check_node(const Graph &graph, NodeId v) {
  if (v >= graph.node_count())
    throw InvalidArgument("node id out of range");
}

} // namespace

bool bfs_query(const Graph &graph, NodeId s, NodeId t) {
  SearchScratch scratch;
  return bfs_search(graph, scratch, s, t).result;
}

QueryStats bfs_search(const Graph &graph, SearchScratch &scratch, NodeId s,
                      NodeId t) {
  check_node(graph, s);
  check_node(graph, t);
  QueryStats stats;
  if (s == t) {
    stats.result = true;
    stats.settled_by = SettledBy::SEqT;
    return stats;
  }
  if (scratch.size() != graph.node_count())
    scratch.resize(graph.node_count());
  scratch.begin_query();
  auto &queue = scratch.fwd_queue;
  scratch.mark_fwd(s);
  queue.push_back(s);
  stats.enqueued_fwd = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ++stats.visited_fwd;
    for (NodeId w : graph.successors(queue[head])) {
      if (w == t) {
        stats.result = true;
        stats.settled_by = SettledBy::Meet;
        return stats;
      }
      if (!scratch.seen_fwd(w)) {
        scratch.mark_fwd(w);
        queue.push_back(w);
        ++stats.enqueued_fwd;
      }
    }
  }
  return stats;
}

QueryStats bidir_bfs_query(const Graph &graph, SearchScratch &scratch,
                           NodeId s, NodeId t) {
  check_node(graph, s);
  check_node(graph, t);
  QueryStats stats;
  if (s == t) {
    stats.result = true;
    stats.settled_by = SettledBy::SEqT;
    return stats;
  }
  if (scratch.size() != graph.node_count())
    scratch.resize(graph.node_count());
  scratch.begin_query();
  auto &fq = scratch.fwd_queue;
  auto &bq = scratch.bwd_queue;
  std::size_t fhead = 0, bhead = 0;
  scratch.mark_fwd(s);
  fq.push_back(s);
  scratch.mark_bwd(t);
  bq.push_back(t);
  stats.enqueued_fwd = stats.enqueued_bwd = 1;

  auto meet = [&] {
    stats.result = true;
    stats.settled_by = SettledBy::Meet;
    return stats;
  };
  while (fhead < fq.size() && bhead < bq.size()) {
    const NodeId u = fq[fhead++];
    ++stats.visited_fwd;
    for (NodeId w : graph.successors(u)) {
      if (scratch.seen_fwd(w))
        continue;
      if (scratch.seen_bwd(w)) {
        scratch.mark_fwd(w);
        return meet();
      }
      scratch.mark_fwd(w);
      fq.push_back(w);
      ++stats.enqueued_fwd;
    }
    if (fhead == fq.size())
      break;
    const NodeId v = bq[bhead++];
    ++stats.visited_bwd;
    for (NodeId w : graph.predecessors(v)) {
      if (scratch.seen_bwd(w))
        continue;
      if (scratch.seen_fwd(w)) {
        scratch.mark_bwd(w);
        return meet();
      }
      scratch.mark_bwd(w);
      bq.push_back(w);
      ++stats.enqueued_bwd;
    }
  }
  return stats;
}

std::vector<NodeId> reachable_set(const Graph &graph, NodeId s) {
  check_node(graph, s);
  std::vector<char> seen(graph.node_count(), 0);
  std::vector<NodeId> order{s};
  seen[s] = 1;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (NodeId w : graph.successors(order[head]))
      if (!seen[w]) {
        seen[w] = 1;
        order.push_back(w);
      }
  return order;
}

} // namespace preach
