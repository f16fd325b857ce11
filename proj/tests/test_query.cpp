#include "doctest.h"

#include "oracle.hpp"
#include "preach/error.hpp"
#include "preach/generators.hpp"
#include "preach/index.hpp"
#include "preach/query.hpp"

#include <set>

using namespace preach;
using namespace preach::testing;

namespace {

const HeuristicConfig kAllConfigs[] = {
    {false, false, false}, {false, false, true}, {false, true, false},
    {false, true, true},   {true, false, false}, {true, false, true},
    {true, true, false},   {true, true, true}};

std::set<NodeId> as_set(const std::vector<NodeId> &v) {
  return {v.begin(), v.end()};
}

} // namespace

TEST_CASE("prune_forward on D4") {
  const ReachIndex index = build_index(d4());
  CHECK(prune_forward(index, 1, 2) == Prune::Prune);
  CHECK(prune_forward(index, 0, 3) == Prune::PositiveStop);
  CHECK(prune_forward(index, 2, 3) == Prune::PositiveStop);
  CHECK(prune_forward(index, 3, 0) == Prune::Prune);
}

TEST_CASE("prune_forward: p_tree range alone settles 2 -> 3") {
  ReachIndex index = build_index(d4());
  const NodeRecord &r2 = index.record(2);
  const NodeRecord &r3 = index.record(3);
  // phi(3) is outside range(2); only the p_tree range covers it.
  CHECK_FALSE((r2.fwd.phi <= r3.fwd.phi && r3.fwd.phi <= r2.fwd.phi_hat));
  CHECK(r2.fwd.ptree_lo == 3);
  CHECK(r2.fwd.ptree_hi == 3);
  index.set_config({true, false, false});
  CHECK(prune_forward(index, 2, 3) == Prune::Continue);
}

TEST_CASE("prune_backward on D4") {
  const ReachIndex index = build_index(d4());
  CHECK(prune_backward(index, 3, 0) == Prune::PositiveStop);
  CHECK(prune_backward(index, 1, 2) == Prune::Prune);
  for (NodeId v = 0; v < 4; ++v) {
    CHECK(prune_backward(index, v, v) == Prune::PositiveStop);
    CHECK(prune_forward(index, v, v) == Prune::PositiveStop);
  }
}

TEST_CASE("level rule alone on D4") {
  ReachIndex index = build_index(d4());
  index.set_config({true, true, false});
  CHECK(prune_forward(index, 1, 2) == Prune::Prune);
  CHECK(prune_forward(index, 0, 3) == Prune::Continue);
  CHECK(prune_backward(index, 1, 2) == Prune::Prune);
}

TEST_CASE("query on D4") {
  const ReachIndex index = build_index(d4());
  SearchScratch scratch;
  CHECK(query(index, scratch, 0, 3).result);
  CHECK_FALSE(query(index, scratch, 3, 0).result);
  CHECK_FALSE(query(index, scratch, 1, 2).result);
  for (NodeId v = 0; v < 4; ++v) {
    const QueryStats st = query(index, scratch, v, v);
    CHECK(st.result);
    CHECK(st.settled_by == SettledBy::SEqT);
  }
  CHECK_THROWS_AS(query(index, scratch, 0, 4), InvalidArgument);
}

TEST_CASE("query inside one strongly connected component") {
  const std::vector<Edge> e{{0, 1}, {1, 0}};
  const ReachIndex index = build_index(Graph::from_edges(2, e));
  SearchScratch scratch;
  CHECK(query(index, scratch, 0, 1).result);
  CHECK(query(index, scratch, 1, 0).result);
}

TEST_CASE("query agrees with brute force for every heuristic subset") {
  std::mt19937_64 rng(123);
  const double densities[] = {0.5, 1, 2, 4, 8};
  SearchScratch scratch;
  int mismatches = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng() % 48);
    const Graph g = random_digraph(
        rng, n, static_cast<std::uint32_t>(densities[trial % 5] * n));
    const ReachMatrix reach = brute_force_closure(g);
    ReachIndex index = build_index(g);
    for (HeuristicConfig config : kAllConfigs) {
      index.set_config(config);
      for (NodeId s = 0; s < n; ++s)
        for (NodeId t = 0; t < n; ++t)
          mismatches += query(index, scratch, s, t).result != bool(reach[s][t]);
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("settled_by is consistent with the answer") {
  std::mt19937_64 rng(8);
  SearchScratch scratch;
  for (int trial = 0; trial < 40; ++trial) {
    const NodeId n = 2 + static_cast<NodeId>(rng() % 40);
    const Graph g = random_test_dag(rng, n, 2 * n);
    ReachIndex index = build_index(g);
    for (HeuristicConfig config : kAllConfigs) {
      index.set_config(config);
      for (NodeId s = 0; s < n; ++s)
        for (NodeId t = 0; t < n; ++t) {
          const QueryStats st = query(index, scratch, s, t);
          CHECK(st.visited_fwd <= index.node_count());
          CHECK(st.visited_bwd <= index.node_count());
          switch (st.settled_by) {
          case SettledBy::Exhausted:
            CHECK_FALSE(st.result);
            break;
          case SettledBy::Meet:
            CHECK(st.result);
            {
              bool both = false;
              for (NodeId v = 0; v < index.node_count(); ++v)
                both |= scratch.seen_fwd(v) && scratch.seen_bwd(v);
              CHECK(both);
            }
            break;
          case SettledBy::FullInterval:
          case SettledBy::SEqT:
            CHECK(st.result);
            break;
          case SettledBy::InitialPrune:
            CHECK_FALSE(st.result);
            CHECK(st.visited_fwd + st.visited_bwd == 0);
            break;
          }
        }
    }
  }
}

TEST_CASE("running a query twice on one scratch is repeatable") {
  const Graph g = gen_random_dag(2000, 8000, 3);
  const ReachIndex index = build_index(g);
  const Workload w = gen_workload(g, WorkloadKind::Random, 300, 4);
  SearchScratch scratch;
  for (const QueryPair &q : w.pairs) {
    const QueryStats a = query(index, scratch, q.s, q.t);
    const QueryStats b = query(index, scratch, q.s, q.t);
    CHECK(a == b);
  }
}

TEST_CASE("epoch wraparound clears the stamps") {
  const Graph g = gen_random_dag(300, 900, 5);
  const ReachIndex index = build_index(g);
  SearchScratch scratch(index.node_count());
  const Workload w = gen_workload(g, WorkloadKind::Random, 50, 6);
  std::vector<QueryStats> fresh;
  for (const QueryPair &q : w.pairs)
    fresh.push_back(query(index, scratch, q.s, q.t));

  scratch.set_epoch_for_testing(0xFFFFFFFFu - 3);
  for (std::size_t i = 0; i < w.pairs.size(); ++i) {
    const QueryStats st = query(index, scratch, w.pairs[i].s, w.pairs[i].t);
    CHECK(st == fresh[i]);
  }
  CHECK(scratch.epoch() < 100);
}

TEST_CASE("pruning never enlarges the search on negative queries") {
  const Graph g = gen_random_dag(5000, 25000, 12);
  ReachIndex index = build_index(g);
  const Workload w = gen_workload(g, WorkloadKind::Negative, 2000, 13);
  SearchScratch scratch;
  int violations = 0;
  for (const QueryPair &q : w.pairs) {
    index.set_config({true, true, true});
    const QueryStats pruned = query(index, scratch, q.s, q.t);
    index.set_config({true, false, false});
    const QueryStats plain = query(index, scratch, q.s, q.t);
    CHECK_FALSE(pruned.result);
    CHECK_FALSE(plain.result);
    violations += pruned.visited_fwd + pruned.visited_bwd >
                  plain.visited_fwd + plain.visited_bwd;
  }
  CHECK(violations == 0);
}

TEST_CASE("query agrees with BFS on a 10^4-node random DAG") {
  const Graph g = gen_random_dag(10'000, 50'000, 77);
  const ReachIndex index = build_index(g);
  const Workload w = gen_workload(g, WorkloadKind::Random, 10'000, 78);
  SearchScratch scratch, bfs_scratch;
  int mismatches = 0;
  for (const QueryPair &q : w.pairs)
    mismatches += query(index, scratch, q.s, q.t).result !=
                  bfs_search(g, bfs_scratch, q.s, q.t).result;
  CHECK(mismatches == 0);
}

// ---------------------------------------------------------------------------
// Baselines

TEST_CASE("bfs and bidirectional bfs") {
  const Graph g = d4();
  CHECK(bfs_query(g, 0, 3));
  CHECK_FALSE(bfs_query(g, 3, 0));
  CHECK(bfs_query(g, 2, 2));
  SearchScratch scratch;
  CHECK(bidir_bfs_query(g, scratch, 0, 3).result);
  CHECK_FALSE(bidir_bfs_query(g, scratch, 1, 2).result);
  const QueryStats self = bidir_bfs_query(g, scratch, 1, 1);
  CHECK(self.result);
  CHECK(self.visited_fwd + self.visited_bwd == 0);
  CHECK_THROWS_AS(bfs_query(g, 0, 9), InvalidArgument);
  CHECK_THROWS_AS(bidir_bfs_query(g, scratch, 9, 0), InvalidArgument);
}

TEST_CASE("bidirectional bfs stops when one side is exhausted") {
  SearchScratch scratch;
  const QueryStats st = bidir_bfs_query(path3(), scratch, 2, 0);
  CHECK_FALSE(st.result);
  CHECK(st.visited_fwd == 1);
  CHECK(st.visited_bwd == 0);
}

TEST_CASE("baselines agree with brute force") {
  std::mt19937_64 rng(55);
  SearchScratch scratch;
  int mismatches = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng() % 40);
    const Graph g = random_digraph(rng, n, 2 * n);
    const ReachMatrix reach = brute_force_closure(g);
    for (NodeId s = 0; s < n; ++s)
      for (NodeId t = 0; t < n; ++t) {
        mismatches += bfs_query(g, s, t) != bool(reach[s][t]);
        mismatches +=
            bidir_bfs_query(g, scratch, s, t).result != bool(reach[s][t]);
      }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("reachable_set") {
  const Graph g = d4();
  CHECK(as_set(reachable_set(g, 0)) == std::set<NodeId>{0, 1, 2, 3});
  CHECK(as_set(reachable_set(g, 3)) == std::set<NodeId>{3});
  CHECK(as_set(reachable_set(g, 1)) == std::set<NodeId>{1, 3});
  CHECK_THROWS_AS(reachable_set(g, 4), InvalidArgument);
}
