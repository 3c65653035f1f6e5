#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "corewalk/graph.hpp"

namespace corewalk {

struct CoreDecomposition {
  // Per node core index; 0 only for isolated nodes, which cannot occur
  // after LCC extraction.
  std::vector<int> core_index;
  int degeneracy = 0;
  // shell_members[k] holds the nodes with core index exactly k, ascending.
  // Indexed 0..degeneracy; inner shells may be empty.
  std::vector<std::vector<NodeId>> shell_members;
};

// Peeling in ascending degree order, lowest node id first among ties.
// Throws DataError on an edgeless graph.
CoreDecomposition decompose(const Graph& g);

// Induced subgraph on {v : core_index[v] >= k}. May be disconnected.
// Throws ConfigError unless 1 <= k <= degeneracy.
Subgraph k_core_subgraph(const Graph& g, const CoreDecomposition& d, int k);

// (k, |shell k|) for k = 1..degeneracy, zero counts included.
std::vector<std::pair<int, std::size_t>> shell_sequence(
    const CoreDecomposition& d);

// CSV, "k,count" with header.
void write_shell_csv(const CoreDecomposition& d, std::ostream& out);

}  // namespace corewalk
