#include "doctest.h"

#include "oracle.hpp"
#include "preach/error.hpp"
#include "preach/generators.hpp"
#include "preach/graph.hpp"
#include "preach/stats.hpp"

#include <filesystem>
#include <map>

using namespace preach;
using namespace preach::testing;

namespace {

std::vector<NodeId> list(std::span<const NodeId> s) {
  return {s.begin(), s.end()};
}

std::filesystem::path temp_file(const char *name) {
  return std::filesystem::temp_directory_path() /
         (std::string("preach_test_") + name);
}

} // namespace

TEST_CASE("edge list parses into canonical graph") {
  const Graph g = parse_graph("3 2\n0 1\n1 2\n", GraphFormat::EdgeList);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(list(g.successors(0)) == std::vector<NodeId>{1});
  CHECK(list(g.successors(1)) == std::vector<NodeId>{2});
  CHECK(g.successors(2).empty());
  CHECK(list(g.predecessors(2)) == std::vector<NodeId>{1});
}

TEST_CASE("gra format parses, header optional") {
  const Graph g = parse_graph("2\n0: 1 #\n1: #\n", GraphFormat::Gra);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(list(g.successors(0)) == std::vector<NodeId>{1});

  const Graph h = parse_graph("graph_for_greach\n3\n0: 2 1 #\n1: #\n2: #\n",
                              GraphFormat::Gra);
  CHECK(list(h.successors(0)) == std::vector<NodeId>{1, 2});
}

TEST_CASE("parse errors carry line numbers") {
  auto message = [](std::string_view text, GraphFormat f) {
    try {
      parse_graph(text, f);
    } catch (const ParseError &e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("2 1\n0 5\n", GraphFormat::EdgeList) ==
        "endpoint out of range at line 2");
  CHECK(message("2 1\n0 x\n", GraphFormat::EdgeList) ==
        "non-integer token at line 2");
  CHECK(message("2 1\n0 1.5\n", GraphFormat::EdgeList) ==
        "non-integer token at line 2");
  CHECK(message("3 2\n0 1\n", GraphFormat::EdgeList).starts_with("expected 2"));
  CHECK(message("3 1\n0 1\n1 2\n", GraphFormat::EdgeList) ==
        "more edge lines than declared at line 3");
  CHECK(message("4294967295 0\n", GraphFormat::EdgeList) ==
        "n exceeds the 32-bit id space at line 1");
  CHECK(message("2\n1: #\n0: #\n", GraphFormat::Gra) ==
        "node ids must be consecutive and ascending at line 2");
  CHECK(message("2\n0: 1\n1: #\n", GraphFormat::Gra) ==
        "expected '#' at line 2");
  CHECK(message("2\n0: 7 #\n1: #\n", GraphFormat::Gra) ==
        "endpoint out of range at line 2");
}

TEST_CASE("duplicate edges are preserved by the loader") {
  const Graph g = parse_graph("2 3\n0 1\n0 1\n1 0\n", GraphFormat::EdgeList);
  CHECK(g.edge_count() == 3);
  CHECK(list(g.successors(0)) == std::vector<NodeId>{1, 1});
  CHECK(list(g.predecessors(1)) == std::vector<NodeId>{0, 0});
}

TEST_CASE("write_graph output") {
  CHECK(format_graph(Graph::from_edges(1, {}), GraphFormat::EdgeList) ==
        "1 0\n");
  const std::string text = format_graph(d4(), GraphFormat::EdgeList);
  CHECK(text == "4 4\n0 1\n0 2\n1 3\n2 3\n");
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
  CHECK(format_graph(d4(), GraphFormat::Gra) ==
        "4\n0: 1 2 #\n1: 3 #\n2: 3 #\n3: #\n");
}

TEST_CASE("load/write round trip is the identity") {
  std::mt19937_64 rng(7);
  const auto path = temp_file("roundtrip.txt");
  for (int trial = 0; trial < 30; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng() % 50);
    const Graph g = trial % 2 ? random_digraph(rng, n, n * 3)
                              : gen_random_dag(n, 2 * n, trial);
    for (GraphFormat f : {GraphFormat::EdgeList, GraphFormat::Gra}) {
      write_graph(g, path, f);
      CHECK(load_graph(path, f) == g);
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("transpose consistency on random multigraphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng() % 40);
    const Graph g = random_digraph(rng, n, static_cast<std::uint32_t>(rng() % 200));
    std::map<std::pair<NodeId, NodeId>, int> out, in;
    for (NodeId u = 0; u < n; ++u) {
      CHECK(std::is_sorted(g.successors(u).begin(), g.successors(u).end()));
      CHECK(std::is_sorted(g.predecessors(u).begin(), g.predecessors(u).end()));
      for (NodeId v : g.successors(u))
        ++out[{u, v}];
      for (NodeId w : g.predecessors(u))
        ++in[{w, u}];
    }
    CHECK(out == in);
  }
}

TEST_CASE("load_graph reports missing files") {
  CHECK_THROWS_AS(load_graph("/nonexistent/preach.txt", GraphFormat::EdgeList),
                  Error);
}

// ---------------------------------------------------------------------------
// Condensation

TEST_CASE("condense: 2-cycle plus tail") {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {1, 2}};
  const CondensedDag c = condense(Graph::from_edges(3, e));
  CHECK(c.component_count == 2);
  CHECK(c.component_of[0] == c.component_of[1]);
  CHECK(c.component_of[2] != c.component_of[0]);
  CHECK(c.dag.edge_count() == 1);
  CHECK(list(c.dag.successors(c.component_of[0])) ==
        std::vector<NodeId>{c.component_of[2]});
}

TEST_CASE("condense: two 2-cycles joined by one edge") {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}};
  const CondensedDag c = condense(Graph::from_edges(4, e));
  CHECK(c.component_count == 2);
  CHECK(c.dag.edge_count() == 1);
  CHECK(c.component_of == std::vector<NodeId>{0, 0, 1, 1});
}

TEST_CASE("condense: acyclic input keeps ids and drops duplicates") {
  const std::vector<Edge> e{{0, 1}, {0, 1}, {0, 2}, {1, 3}, {2, 3}};
  const CondensedDag c = condense(Graph::from_edges(4, e));
  CHECK(c.component_count == 4);
  CHECK(c.component_of == std::vector<NodeId>{0, 1, 2, 3});
  CHECK(c.dag == d4());
}

TEST_CASE("condense: self loops vanish") {
  const std::vector<Edge> e{{0, 0}, {0, 1}};
  const CondensedDag c = condense(Graph::from_edges(2, e));
  CHECK(c.component_count == 2);
  CHECK(c.dag.edge_count() == 1);
}

TEST_CASE("condense matches brute-force mutual reachability, n <= 64") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const NodeId n = 1 + static_cast<NodeId>(rng() % 64);
    const double densities[] = {0.5, 1, 2, 4, 8};
    const auto m = static_cast<std::uint32_t>(densities[trial % 5] * n);
    const Graph g = random_digraph(rng, n, m);
    const CondensedDag c = condense(g);
    const ReachMatrix reach = brute_force_closure(g);
    const ReachMatrix dag_reach = brute_force_closure(c.dag);

    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = 0; v < n; ++v) {
        const bool mutual = reach[u][v] && reach[v][u];
        CHECK((c.component_of[u] == c.component_of[v]) == mutual);
        CHECK(bool(reach[u][v]) ==
              bool(dag_reach[c.component_of[u]][c.component_of[v]]));
      }
    // No self loops, no duplicates, and every original edge represented.
    for (NodeId a = 0; a < c.component_count; ++a) {
      const auto succ = c.dag.successors(a);
      CHECK(std::adjacent_find(succ.begin(), succ.end()) == succ.end());
      CHECK(std::find(succ.begin(), succ.end(), a) == succ.end());
    }
    for (const Edge &e : g.edges()) {
      const NodeId a = c.component_of[e.tail], b = c.component_of[e.head];
      if (a != b) {
        const auto succ = c.dag.successors(a);
        CHECK(std::binary_search(succ.begin(), succ.end(), b));
      }
    }
    CHECK_NOTHROW(longest_path_length(c.dag));
  }
}

TEST_CASE("condense handles a long path without recursion") {
  const NodeId n = 1'000'000;
  std::vector<Edge> e;
  for (NodeId v = 0; v + 1 < n; ++v)
    e.push_back({v, v + 1});
  e.push_back({n - 1, 0});
  const CondensedDag c = condense(Graph::from_edges(n, e));
  CHECK(c.component_count == 1);
  CHECK(c.dag.edge_count() == 0);
}

// ---------------------------------------------------------------------------
// Stats

TEST_CASE("graph_stats") {
  const GraphStats s = graph_stats(d4(), 1000, 3);
  CHECK(s.n == 4);
  CHECK(s.m == 4);
  CHECK(s.density == doctest::Approx(1.0));
  CHECK(s.longest_path == 2);
  // 5 of the 12 ordered pairs s != t are positive.
  CHECK(s.positive_rate == doctest::Approx(5.0 / 12.0).epsilon(0.1));

  const GraphStats one = graph_stats(Graph::from_edges(1, {}));
  CHECK(one.n == 1);
  CHECK(one.m == 0);
  CHECK(one.longest_path == 0);

  CHECK(graph_stats(path3(), 100).longest_path == 2);
  CHECK(to_csv_row("d4", s).starts_with("d4,4,4,1.0000,2,"));
}

TEST_CASE("longest path of the condensed graph of a cyclic input") {
  const std::vector<Edge> e{{0, 1}, {1, 0}, {1, 2}, {2, 3}};
  CHECK(graph_stats(Graph::from_edges(4, e), 10).longest_path == 2);
  CHECK_THROWS_AS(longest_path_length(Graph::from_edges(4, e)), CycleError);
}
