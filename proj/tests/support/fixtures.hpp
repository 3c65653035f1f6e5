#pragma once

// Deterministic graphs and systems used across the unit and acceptance
// suites. The two large generators imitate the shape of the usual citation
// and social benchmark graphs (size, degeneracy, shell profile) so the full
// pipeline can be exercised hermetically.

#include <cstdint>
#include <utility>
#include <vector>

#include "corewalk/embedding.hpp"
#include "corewalk/graph.hpp"

namespace corewalk::test {

Graph clique(NodeId n);
Graph path_graph(NodeId n);
Graph star_graph(NodeId leaves);
Graph er_graph(NodeId n, double p, std::uint64_t seed);

// Preferential attachment with triadic closure. About 2.1 new edges per
// node; hubs plus local clustering give it a citation-like shell profile.
Graph citation_fixture(std::uint64_t seed, NodeId n = 2708);

// Nested dense blocks bridged to each other plus a preferentially attached
// periphery: a few thousand nodes, high degeneracy, shells spread from the
// periphery up to the densest block.
Graph social_fixture(std::uint64_t seed);

// A single propagation instance: fixed anchor nodes with known vectors and
// a connected-to-the-anchors set of unknowns.
struct ShellSystem {
  Graph g;
  std::vector<std::uint8_t> embedded;
  std::vector<NodeId> new_nodes;
  EmbeddingMatrix emb;  // anchors filled, unknown rows zero
  int dim = 0;
};

// Random system with <= max_new unknowns. Every connected piece of the
// unknown subgraph touches at least two anchors, so the averaging system is
// well posed and its solution strictly inside the anchor hull.
ShellSystem random_shell_system(std::uint64_t seed, int max_new = 50);

// Dense direct solve of the system's fixed point equations (one linear
// system per dimension). Returns a num_new x dim row major matrix.
std::vector<double> shell_system_solve(const ShellSystem& s);

}  // namespace corewalk::test
