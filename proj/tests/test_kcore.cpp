#include <algorithm>
#include <sstream>

#include "corewalk/error.hpp"
#include "corewalk/kcore.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace corewalk;
using test::clique;
using test::core_oracle;
using test::er_graph;
using test::path_graph;
using test::peel_to_fixpoint;
using test::star_graph;

TEST_CASE("triangle with a pendant: triangle is the 2-core") {
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {1, 2}, {2, 0}, {2, 3}};
  Graph g = graph_from_edges(4, edges);
  CoreDecomposition d = decompose(g);
  CHECK(d.core_index == std::vector<int>{2, 2, 2, 1});
  CHECK(d.degeneracy == 2);
  CHECK(d.shell_members[1] == std::vector<NodeId>{3});
  CHECK(d.shell_members[2] == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("complete graph: every node sits in the top core") {
  Graph g = clique(5);
  CoreDecomposition d = decompose(g);
  CHECK(d.degeneracy == 4);
  for (NodeId v = 0; v < 5; ++v) CHECK(d.core_index[v] == 4);
}

TEST_CASE("paths and stars are 1-degenerate") {
  CHECK(decompose(path_graph(6)).degeneracy == 1);
  CHECK(decompose(star_graph(7)).degeneracy == 1);
}

TEST_CASE("decompose rejects edgeless input") {
  std::vector<std::pair<NodeId, NodeId>> none;
  Graph g = graph_from_edges(3, none);
  CHECK_THROWS_AS(decompose(g), DataError);
}

TEST_CASE("shell sequence covers 1..degeneracy including empty shells") {
  // K4 plus a pendant: shells 1 and 3 populated, shell 2 empty.
  std::vector<std::pair<NodeId, NodeId>> edges = {{0, 1}, {0, 2}, {0, 3},
                                                  {1, 2}, {1, 3}, {2, 3},
                                                  {3, 4}};
  Graph g = graph_from_edges(5, edges);
  CoreDecomposition d = decompose(g);
  auto seq = shell_sequence(d);
  REQUIRE(seq.size() == 3);
  CHECK(seq[0] == std::pair<int, std::size_t>{1, 1});
  CHECK(seq[1] == std::pair<int, std::size_t>{2, 0});
  CHECK(seq[2] == std::pair<int, std::size_t>{3, 4});
}

TEST_CASE("shell csv lists one row per k") {
  Graph g = clique(4);
  std::ostringstream out;
  write_shell_csv(decompose(g), out);
  CHECK(out.str() == "k,count\n1,0\n2,0\n3,4\n");
}

TEST_CASE("k_core_subgraph rejects k outside [1, degeneracy]") {
  Graph g = clique(4);
  CoreDecomposition d = decompose(g);
  CHECK_THROWS_AS(k_core_subgraph(g, d, 0), ConfigError);
  CHECK_THROWS_AS(k_core_subgraph(g, d, 4), ConfigError);
  CHECK(k_core_subgraph(g, d, 3).graph.num_nodes() == 4);
}

TEST_CASE("the k-core can be disconnected") {
  // Two K4s joined by a path: the 3-core splits in two.
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < 4; ++i) {
    for (NodeId j = i + 1; j < 4; ++j) {
      edges.emplace_back(i, j);
      edges.emplace_back(i + 6, j + 6);
    }
  }
  edges.emplace_back(3, 4);
  edges.emplace_back(4, 5);
  edges.emplace_back(5, 6);
  Graph g = graph_from_edges(10, edges);
  CoreDecomposition d = decompose(g);
  CHECK(d.degeneracy == 3);
  Subgraph core = k_core_subgraph(g, d, 3);
  CHECK(core.graph.num_nodes() == 8);
  CHECK(connected_components(core.graph).size() == 2);
}

TEST_CASE("decomposition matches fixpoint peeling on random graphs") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Graph g = er_graph(30, 0.15, seed * 7 + 1);
    if (g.num_edges() == 0) continue;
    CHECK(decompose(g).core_index == core_oracle(g));
  }
}

TEST_CASE("cores are nested and maximal") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = er_graph(40, 0.2, seed + 31);
    if (g.num_edges() == 0) continue;
    CoreDecomposition d = decompose(g);
    for (int k = 1; k <= d.degeneracy; ++k) {
      Subgraph core = k_core_subgraph(g, d, k);
      // Minimum internal degree >= k.
      for (NodeId v = 0; v < core.graph.num_nodes(); ++v) {
        CHECK(core.graph.degree(v) >= static_cast<NodeId>(k));
      }
      // Same node set as the peeling fixpoint (maximality).
      CHECK(core.original_ids == peel_to_fixpoint(g, k));
      // Nesting.
      if (k > 1) {
        Subgraph outer = k_core_subgraph(g, d, k - 1);
        CHECK(std::includes(outer.original_ids.begin(), outer.original_ids.end(),
                            core.original_ids.begin(), core.original_ids.end()));
      }
    }
  }
}

TEST_CASE("core index never exceeds degree") {
  Graph g = er_graph(50, 0.12, 97);
  CoreDecomposition d = decompose(g);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    CHECK(d.core_index[v] <= static_cast<int>(g.degree(v)));
  }
}
