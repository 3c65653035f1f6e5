#include "fixtures.hpp"

#include <algorithm>

#include "corewalk/rng.hpp"
#include "oracles.hpp"

namespace corewalk::test {

Graph clique(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return graph_from_edges(n, edges);
}

Graph path_graph(NodeId n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return graph_from_edges(n, edges);
}

Graph star_graph(NodeId leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return graph_from_edges(leaves + 1, edges);
}

Graph er_graph(NodeId n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.next_double() < p) edges.emplace_back(i, j);
    }
  }
  return graph_from_edges(n, edges);
}

namespace {

// Incremental edge store with degree proportional sampling via the endpoint
// list trick.
struct Growing {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<NodeId> endpoints;
  std::vector<std::vector<NodeId>> adj;

  explicit Growing(NodeId n) : adj(n) {}

  void add(NodeId u, NodeId v) {
    edges.emplace_back(u, v);
    endpoints.push_back(u);
    endpoints.push_back(v);
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  bool connected(NodeId u, NodeId v) const {
    const auto& list = adj[u].size() <= adj[v].size() ? adj[u] : adj[v];
    const NodeId probe = adj[u].size() <= adj[v].size() ? v : u;
    return std::find(list.begin(), list.end(), probe) != list.end();
  }

  NodeId random_endpoint(Rng& rng) const {
    return endpoints[rng.next_below(endpoints.size())];
  }
};

}  // namespace

Graph citation_fixture(std::uint64_t seed, NodeId n) {
  constexpr double kClosure = 0.35;
  Rng rng(seed);
  Growing g(n);
  const NodeId kSeed = 5;
  for (NodeId i = 0; i < kSeed; ++i) {
    for (NodeId j = i + 1; j < kSeed; ++j) g.add(i, j);
  }
  for (NodeId v = kSeed; v < n; ++v) {
    const double r = rng.next_double();
    const int m = r < 0.45 ? 1 : r < 0.70 ? 2 : r < 0.85 ? 3 : r < 0.95 ? 4 : 6;
    std::vector<NodeId> targets;
    int attempts = 0;
    while (static_cast<int>(targets.size()) < m && attempts < 60) {
      ++attempts;
      NodeId t;
      if (!targets.empty() && rng.next_double() < kClosure) {
        const NodeId base = targets[rng.next_below(targets.size())];
        t = g.adj[base][rng.next_below(g.adj[base].size())];
      } else {
        t = g.random_endpoint(rng);
      }
      if (t == v) continue;
      if (std::find(targets.begin(), targets.end(), t) != targets.end()) continue;
      targets.push_back(t);
    }
    for (NodeId t : targets) g.add(v, t);
  }
  return graph_from_edges(n, g.edges);
}

Graph social_fixture(std::uint64_t seed) {
  // Block sizes and densities produce roughly 4k nodes / 88k edges with
  // shells running from ~6 (periphery) to ~100 (densest block).
  const std::vector<NodeId> sizes = {220, 350, 450, 550, 650, 750};
  const std::vector<double> probs = {0.59, 0.27, 0.15, 0.091, 0.054, 0.0355};
  const NodeId periphery = 1069;
  const int kPeripheryDegree = 6;

  Rng rng(seed);
  NodeId total = periphery;
  std::vector<NodeId> offset(sizes.size());
  NodeId cursor = 0;
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    offset[b] = cursor;
    cursor += sizes[b];
  }
  total += cursor;

  Growing g(total);
  for (std::size_t b = 0; b < sizes.size(); ++b) {
    for (NodeId i = 0; i < sizes[b]; ++i) {
      for (NodeId j = i + 1; j < sizes[b]; ++j) {
        if (rng.next_double() < probs[b]) g.add(offset[b] + i, offset[b] + j);
      }
    }
  }
  // Bridges: a chain between consecutive blocks plus spokes into the
  // densest block, so no shell can end up cut off from the deeper cores.
  auto random_in_block = [&](std::size_t b) {
    return offset[b] + static_cast<NodeId>(rng.next_below(sizes[b]));
  };
  for (std::size_t b = 1; b < sizes.size(); ++b) {
    for (int e = 0; e < 60; ++e) {
      const NodeId u = random_in_block(b);
      const NodeId v = random_in_block(b - 1);
      if (!g.connected(u, v)) g.add(u, v);
    }
    for (int e = 0; e < 40; ++e) {
      const NodeId u = random_in_block(b);
      const NodeId v = random_in_block(0);
      if (!g.connected(u, v)) g.add(u, v);
    }
  }
  // Preferentially attached periphery.
  for (NodeId v = cursor; v < total; ++v) {
    std::vector<NodeId> targets;
    int attempts = 0;
    while (static_cast<int>(targets.size()) < kPeripheryDegree &&
           attempts < 80) {
      ++attempts;
      const NodeId t = g.random_endpoint(rng);
      if (t == v) continue;
      if (std::find(targets.begin(), targets.end(), t) != targets.end()) continue;
      targets.push_back(t);
    }
    for (NodeId t : targets) g.add(v, t);
  }
  return graph_from_edges(total, g.edges);
}

ShellSystem random_shell_system(std::uint64_t seed, int max_new) {
  Rng rng(seed);
  const int n_new = 2 + static_cast<int>(rng.next_below(
                            static_cast<std::uint64_t>(max_new - 1)));
  const int n_fixed = 2 + static_cast<int>(rng.next_below(7));
  const int dim = 3;
  const NodeId total = static_cast<NodeId>(n_fixed + n_new);
  // Nodes [0, n_fixed) are anchors, the rest unknowns.
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto unknown_id = [&](int i) { return static_cast<NodeId>(n_fixed + i); };

  const double p = std::min(1.0, 2.5 / n_new);
  for (int i = 0; i < n_new; ++i) {
    for (int j = i + 1; j < n_new; ++j) {
      if (rng.next_double() < p) edges.emplace_back(unknown_id(i), unknown_id(j));
    }
  }
  for (int f = 0; f < n_fixed; ++f) {
    const int links = 1 + static_cast<int>(rng.next_below(3));
    for (int l = 0; l < links; ++l) {
      edges.emplace_back(static_cast<NodeId>(f),
                         unknown_id(static_cast<int>(rng.next_below(
                             static_cast<std::uint64_t>(n_new)))));
    }
  }

  // Connected pieces of the unknown subgraph must each touch two or more
  // distinct anchors, otherwise the averaging system is degenerate (single
  // valued boundary) or unanchored entirely.
  {
    std::vector<std::vector<int>> nbr(static_cast<std::size_t>(n_new));
    std::vector<std::vector<NodeId>> anchors(static_cast<std::size_t>(n_new));
    for (const auto& [u, v] : edges) {
      const bool fu = u < static_cast<NodeId>(n_fixed);
      const bool fv = v < static_cast<NodeId>(n_fixed);
      if (!fu && !fv) {
        nbr[u - n_fixed].push_back(static_cast<int>(v) - n_fixed);
        nbr[v - n_fixed].push_back(static_cast<int>(u) - n_fixed);
      } else if (fu != fv) {
        const int unk = static_cast<int>(fu ? v : u) - n_fixed;
        anchors[static_cast<std::size_t>(unk)].push_back(fu ? u : v);
      }
    }
    std::vector<int> comp(static_cast<std::size_t>(n_new), -1);
    int n_comp = 0;
    for (int i = 0; i < n_new; ++i) {
      if (comp[static_cast<std::size_t>(i)] >= 0) continue;
      std::vector<int> stack{i};
      comp[static_cast<std::size_t>(i)] = n_comp;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : nbr[static_cast<std::size_t>(x)]) {
          if (comp[static_cast<std::size_t>(y)] < 0) {
            comp[static_cast<std::size_t>(y)] = n_comp;
            stack.push_back(y);
          }
        }
      }
      ++n_comp;
    }
    for (int c = 0; c < n_comp; ++c) {
      std::vector<NodeId> seen;
      std::vector<int> members;
      for (int i = 0; i < n_new; ++i) {
        if (comp[static_cast<std::size_t>(i)] != c) continue;
        members.push_back(i);
        for (NodeId a : anchors[static_cast<std::size_t>(i)]) {
          if (std::find(seen.begin(), seen.end(), a) == seen.end()) {
            seen.push_back(a);
          }
        }
      }
      while (seen.size() < 2) {
        NodeId a = static_cast<NodeId>(rng.next_below(
            static_cast<std::uint64_t>(n_fixed)));
        while (std::find(seen.begin(), seen.end(), a) != seen.end()) {
          a = static_cast<NodeId>((a + 1) % static_cast<NodeId>(n_fixed));
        }
        const int member =
            members[rng.next_below(members.size())];
        edges.emplace_back(a, unknown_id(member));
        seen.push_back(a);
      }
    }
  }

  ShellSystem out;
  out.g = graph_from_edges(total, edges);
  out.dim = dim;
  out.embedded.assign(total, 0);
  out.emb = EmbeddingMatrix(total, dim);
  for (int f = 0; f < n_fixed; ++f) {
    out.embedded[static_cast<std::size_t>(f)] = 1;
    auto row = out.emb.row(static_cast<NodeId>(f));
    for (int d = 0; d < dim; ++d) {
      row[static_cast<std::size_t>(d)] =
          static_cast<float>(rng.next_double() * 2.0 - 1.0);
    }
    out.emb.set_trained(static_cast<NodeId>(f), true);
  }
  for (int i = 0; i < n_new; ++i) out.new_nodes.push_back(unknown_id(i));
  return out;
}

std::vector<double> shell_system_solve(const ShellSystem& s) {
  const int n = static_cast<int>(s.new_nodes.size());
  const int dim = s.dim;
  std::vector<int> local(s.g.num_nodes(), -1);
  for (int i = 0; i < n; ++i) local[s.new_nodes[static_cast<std::size_t>(i)]] = i;

  // x_i - (1/|elig_i|) sum_{j in unknown nbrs} x_j = (1/|elig_i|) sum anchors
  std::vector<double> out(static_cast<std::size_t>(n) * dim, 0.0);
  for (int d = 0; d < dim; ++d) {
    std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> b(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      const NodeId v = s.new_nodes[static_cast<std::size_t>(i)];
      double eligible = 0;
      double fixed_sum = 0;
      std::vector<int> unknown_nbrs;
      for (NodeId u : s.g.neighbours(v)) {
        if (s.embedded[u]) {
          eligible += 1;
          fixed_sum += static_cast<double>(s.emb.row(u)[static_cast<std::size_t>(d)]);
        } else if (local[u] >= 0) {
          eligible += 1;
          unknown_nbrs.push_back(local[u]);
        }
      }
      a[static_cast<std::size_t>(i) * n + i] = 1.0;
      for (int j : unknown_nbrs) {
        a[static_cast<std::size_t>(i) * n + j] -= 1.0 / eligible;
      }
      b[static_cast<std::size_t>(i)] = fixed_sum / eligible;
    }
    const auto x = dense_solve(a, b);
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i) * dim + d] = x[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

}  // namespace corewalk::test
