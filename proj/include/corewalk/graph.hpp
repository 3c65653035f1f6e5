#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace corewalk {

using NodeId = std::uint32_t;

// Raw pairs as they appeared in the input, comments and blank lines already
// stripped. Duplicates and self loops are preserved here; build_graph cleans.
struct EdgeList {
  std::vector<std::pair<std::string, std::string>> pairs;
};

struct BuildStats {
  std::size_t input_pairs = 0;
  std::size_t self_loops_removed = 0;
  std::size_t duplicates_removed = 0;
};

// Undirected, unweighted, immutable once built. Neighbour lists are sorted
// ascending, which makes edge lookup a binary search and gives every
// traversal a canonical order.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::vector<NodeId>> adjacency,
        std::vector<std::string> labels);

  NodeId num_nodes() const { return static_cast<NodeId>(adj_.size()); }
  std::size_t num_edges() const { return num_edges_; }

  std::span<const NodeId> neighbours(NodeId u) const { return adj_[u]; }
  NodeId degree(NodeId u) const {
    return static_cast<NodeId>(adj_[u].size());
  }

  // Throws std::out_of_range when either id is not a node.
  bool has_edge(NodeId u, NodeId v) const;

  // External id the node had in the input file.
  const std::string& label(NodeId u) const { return labels_[u]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::string> labels_;
  std::size_t num_edges_ = 0;
};

// Whitespace separated pairs, one per line; lines starting with '#' or '%'
// and blank lines are skipped, tokens past the second are ignored. A line
// with exactly one token raises ParseError with its line number.
EdgeList parse_edge_list(std::istream& in);
EdgeList read_edge_list(const std::string& path);

// Internal ids are dense, assigned by first appearance. Self loops and
// duplicate edges are dropped and counted. Empty input raises DataError.
Graph build_graph(const EdgeList& edges, BuildStats* stats = nullptr);

// Test and generator convenience: nodes are exactly 0..n-1 (isolated ones
// allowed), labels are the decimal ids. Cleans loops/duplicates like
// build_graph but keeps the identity mapping.
Graph graph_from_edges(NodeId n,
                       std::span<const std::pair<NodeId, NodeId>> edges);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> original_ids;  // new id -> id in the parent graph
};

// keep may be unsorted; ids are deduplicated and re-densified in ascending
// original order. Edges with both endpoints kept survive.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> keep);

// Components sorted internally, discovered in ascending order of their
// smallest node id.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

// Ties between equal sized components go to the one with the smallest
// minimum node id.
Subgraph largest_component_subgraph(const Graph& g);
Graph largest_connected_component(const Graph& g);

// One line per edge, "label_u label_v", u < v in internal order. Parsing the
// output and rebuilding yields the same graph up to id renumbering.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace corewalk
