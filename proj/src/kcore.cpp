#include "corewalk/kcore.hpp"

#include <algorithm>
#include <ostream>
#include <queue>

#include "corewalk/error.hpp"

namespace corewalk {

CoreDecomposition decompose(const Graph& g) {
  const NodeId n = g.num_nodes();
  if (n == 0 || g.num_edges() == 0) {
    throw DataError("core decomposition needs at least one edge");
  }

  // Lazy deletion min-heap keyed (degree, id): stale entries are skipped
  // when popped. O((V+E) log V), and the (degree, id) key realises the
  // lowest-id tie break exactly instead of approximating it with buckets.
  std::vector<int> deg(n);
  using Entry = std::pair<int, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = static_cast<int>(g.degree(v));
    heap.emplace(deg[v], v);
  }

  CoreDecomposition out;
  out.core_index.assign(n, 0);
  std::vector<char> removed(n, 0);
  int running = 0;
  for (NodeId done = 0; done < n; ++done) {
    Entry top;
    for (;;) {
      top = heap.top();
      heap.pop();
      if (!removed[top.second] && top.first == deg[top.second]) break;
    }
    const NodeId v = top.second;
    running = std::max(running, top.first);
    out.core_index[v] = running;
    removed[v] = 1;
    for (NodeId u : g.neighbours(v)) {
      if (!removed[u]) heap.emplace(--deg[u], u);
    }
  }

  out.degeneracy = running;
  out.shell_members.assign(static_cast<std::size_t>(running) + 1, {});
  for (NodeId v = 0; v < n; ++v) {
    out.shell_members[static_cast<std::size_t>(out.core_index[v])].push_back(v);
  }
  return out;
}

Subgraph k_core_subgraph(const Graph& g, const CoreDecomposition& d, int k) {
  if (k < 1 || k > d.degeneracy) {
    throw ConfigError("k-core is empty: k = " + std::to_string(k) +
                      ", degeneracy = " + std::to_string(d.degeneracy));
  }
  std::vector<NodeId> keep;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (d.core_index[v] >= k) keep.push_back(v);
  }
  return induced_subgraph(g, keep);
}

std::vector<std::pair<int, std::size_t>> shell_sequence(
    const CoreDecomposition& d) {
  std::vector<std::pair<int, std::size_t>> out;
  for (int k = 1; k <= d.degeneracy; ++k) {
    out.emplace_back(k, d.shell_members[static_cast<std::size_t>(k)].size());
  }
  return out;
}

void write_shell_csv(const CoreDecomposition& d, std::ostream& out) {
  out << "k,count\n";
  for (const auto& [k, count] : shell_sequence(d)) {
    out << k << ',' << count << '\n';
  }
}

}  // namespace corewalk
