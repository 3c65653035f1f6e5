#include "corewalk/graph.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <unordered_map>

#include "corewalk/error.hpp"

namespace corewalk {

Graph::Graph(std::vector<std::vector<NodeId>> adjacency,
             std::vector<std::string> labels)
    : adj_(std::move(adjacency)), labels_(std::move(labels)) {
  assert(adj_.size() == labels_.size());
  std::size_t half_edges = 0;
  for (auto& list : adj_) {
    assert(std::is_sorted(list.begin(), list.end()));
    half_edges += list.size();
  }
  assert(half_edges % 2 == 0);
  num_edges_ = half_edges / 2;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes()) {
    throw std::out_of_range("has_edge: node id out of range");
  }
  // Probe the shorter list.
  if (adj_[v].size() < adj_[u].size()) std::swap(u, v);
  const auto& list = adj_[u];
  return std::binary_search(list.begin(), list.end(), v);
}

EdgeList parse_edge_list(std::istream& in) {
  EdgeList out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t i = line.find_first_not_of(" \t\r");
    if (i == std::string::npos) continue;
    if (line[i] == '#' || line[i] == '%') continue;
    std::string tok[2];
    int have = 0;
    while (i < line.size() && have < 2) {
      std::size_t j = line.find_first_of(" \t\r", i);
      if (j == std::string::npos) j = line.size();
      tok[have++] = line.substr(i, j - i);
      i = line.find_first_not_of(" \t\r", j);
      if (i == std::string::npos) break;
    }
    if (have < 2) throw ParseError(line_no, "expected two node ids");
    out.pairs.emplace_back(std::move(tok[0]), std::move(tok[1]));
  }
  return out;
}

EdgeList read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return parse_edge_list(in);
}

namespace {

// Shared tail of the two builders: edges are internal id pairs, possibly
// with loops and duplicates.
Graph finish_build(NodeId n, std::vector<std::pair<NodeId, NodeId>> edges,
                   std::vector<std::string> labels, BuildStats* stats) {
  std::size_t loops = 0;
  std::size_t kept = 0;
  for (auto& e : edges) {
    if (e.first == e.second) {
      ++loops;
      continue;
    }
    if (e.first > e.second) std::swap(e.first, e.second);
    edges[kept++] = e;
  }
  edges.resize(kept);
  std::sort(edges.begin(), edges.end());
  auto last = std::unique(edges.begin(), edges.end());
  std::size_t dupes = static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());

  if (stats != nullptr) {
    stats->self_loops_removed = loops;
    stats->duplicates_removed = dupes;
  }

  std::vector<std::vector<NodeId>> adj(n);
  {
    std::vector<std::uint32_t> deg(n, 0);
    for (const auto& e : edges) {
      ++deg[e.first];
      ++deg[e.second];
    }
    for (NodeId v = 0; v < n; ++v) adj[v].reserve(deg[v]);
  }
  for (const auto& e : edges) {
    adj[e.first].push_back(e.second);
    adj[e.second].push_back(e.first);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return Graph(std::move(adj), std::move(labels));
}

}  // namespace

Graph build_graph(const EdgeList& edges, BuildStats* stats) {
  if (edges.pairs.empty()) throw DataError("edge list is empty");
  if (stats != nullptr) *stats = BuildStats{};
  if (stats != nullptr) stats->input_pairs = edges.pairs.size();

  std::unordered_map<std::string, NodeId> id_of;
  id_of.reserve(edges.pairs.size() * 2);
  std::vector<std::string> labels;
  std::vector<std::pair<NodeId, NodeId>> internal;
  internal.reserve(edges.pairs.size());
  auto intern = [&](const std::string& s) {
    auto it = id_of.find(s);
    if (it != id_of.end()) return it->second;
    NodeId id = static_cast<NodeId>(labels.size());
    id_of.emplace(s, id);
    labels.push_back(s);
    return id;
  };
  for (const auto& p : edges.pairs) {
    NodeId u = intern(p.first);
    NodeId v = intern(p.second);
    internal.emplace_back(u, v);
  }
  const NodeId n = static_cast<NodeId>(labels.size());
  return finish_build(n, std::move(internal), std::move(labels), stats);
}

Graph graph_from_edges(NodeId n,
                       std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<std::string> labels(n);
  for (NodeId v = 0; v < n; ++v) labels[v] = std::to_string(v);
  std::vector<std::pair<NodeId, NodeId>> copy;
  copy.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.first >= n || e.second >= n) {
      throw std::out_of_range("graph_from_edges: node id out of range");
    }
    copy.push_back(e);
  }
  return finish_build(n, std::move(copy), std::move(labels), nullptr);
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> keep) {
  std::vector<NodeId> ids(keep.begin(), keep.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (NodeId v : ids) {
    if (v >= g.num_nodes()) {
      throw std::out_of_range("induced_subgraph: node id out of range");
    }
  }

  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> new_id(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    new_id[ids[i]] = static_cast<NodeId>(i);
  }

  std::vector<std::vector<NodeId>> adj(ids.size());
  std::vector<std::string> labels(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    labels[i] = g.label(ids[i]);
    for (NodeId u : g.neighbours(ids[i])) {
      // Mapping preserves order, so the new list stays sorted.
      if (new_id[u] != kAbsent) adj[i].push_back(new_id[u]);
    }
  }
  Subgraph out;
  out.graph = Graph(std::move(adj), std::move(labels));
  out.original_ids = std::move(ids);
  return out;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<char> seen(g.num_nodes(), 0);
  std::vector<NodeId> queue;
  for (NodeId root = 0; root < g.num_nodes(); ++root) {
    if (seen[root]) continue;
    seen[root] = 1;
    queue.assign(1, root);
    std::vector<NodeId> comp;
    while (!queue.empty()) {
      NodeId v = queue.back();
      queue.pop_back();
      comp.push_back(v);
      for (NodeId u : g.neighbours(v)) {
        if (!seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Subgraph largest_component_subgraph(const Graph& g) {
  if (g.num_nodes() == 0) throw DataError("graph has no nodes");
  auto comps = connected_components(g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    // Strict > keeps the earliest (smallest min id) on ties.
    if (comps[i].size() > comps[best].size()) best = i;
  }
  return induced_subgraph(g, comps[best]);
}

Graph largest_connected_component(const Graph& g) {
  return largest_component_subgraph(g).graph;
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbours(u)) {
      if (v > u) out << g.label(u) << ' ' << g.label(v) << '\n';
    }
  }
}

}  // namespace corewalk
