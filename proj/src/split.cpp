#include "corewalk/split.hpp"

#include <algorithm>
#include <unordered_set>

#include "corewalk/error.hpp"
#include "corewalk/log.hpp"
#include "corewalk/rng.hpp"

namespace corewalk {

LinkPredictionSplit make_split(const Graph& g, double fraction,
                               std::uint64_t seed) {
  if (!(fraction > 0.0) || !(fraction < 1.0)) {
    throw ConfigError("removal fraction must lie in (0, 1)");
  }
  if (g.num_edges() == 0) throw DataError("cannot split an edgeless graph");

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.num_edges());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbours(u)) {
      if (v > u) edges.emplace_back(u, v);
    }
  }

  const std::size_t n_remove =
      static_cast<std::size_t>(fraction * static_cast<double>(edges.size()));
  if (n_remove >= edges.size()) {
    throw DataError("removal fraction deletes every edge");
  }

  {
    Rng rng(derive_seed(seed, {salt::kEdgeRemoval}));
    for (std::size_t i = edges.size(); i > 1; --i) {
      std::size_t j = rng.next_below(i);
      std::swap(edges[i - 1], edges[j]);
    }
  }

  // Rebuild on the original node set; nodes that lose every edge simply end
  // up outside the LCC.
  std::vector<std::vector<NodeId>> adj(g.num_nodes());
  for (std::size_t i = n_remove; i < edges.size(); ++i) {
    adj[edges[i].first].push_back(edges[i].second);
    adj[edges[i].second].push_back(edges[i].first);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  Graph pruned(std::move(adj), g.labels());
  Subgraph lcc = largest_component_subgraph(pruned);

  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> train_id(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < lcc.original_ids.size(); ++i) {
    train_id[lcc.original_ids[i]] = static_cast<NodeId>(i);
  }

  std::vector<std::pair<NodeId, NodeId>> positives;  // train graph ids
  for (std::size_t i = 0; i < n_remove; ++i) {
    const NodeId a = train_id[edges[i].first];
    const NodeId b = train_id[edges[i].second];
    if (a == kAbsent || b == kAbsent) continue;
    positives.emplace_back(std::min(a, b), std::max(a, b));
  }

  // Negatives: distinct non-edges of the *input* graph (so a removed edge
  // can never appear as a negative) between surviving nodes.
  const std::size_t n_train = lcc.original_ids.size();
  std::vector<std::pair<NodeId, NodeId>> negatives;
  {
    Rng rng(derive_seed(seed, {salt::kNegatives}));
    std::unordered_set<std::uint64_t> seen;
    const std::size_t wanted = positives.size();
    std::size_t attempts = 0;
    const std::size_t max_attempts = 200 * wanted + 10000;
    while (negatives.size() < wanted && attempts < max_attempts) {
      ++attempts;
      NodeId a = static_cast<NodeId>(rng.next_below(n_train));
      NodeId b = static_cast<NodeId>(rng.next_below(n_train));
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      const std::uint64_t key =
          (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
      if (seen.count(key)) continue;
      if (g.has_edge(lcc.original_ids[a], lcc.original_ids[b])) continue;
      seen.insert(key);
      negatives.emplace_back(a, b);
    }
    if (negatives.size() < wanted) {
      // Rejection stalled; the graph is nearly complete. Enumerate instead.
      for (NodeId a = 0; a < n_train && negatives.size() < wanted; ++a) {
        for (NodeId b = a + 1; b < n_train && negatives.size() < wanted; ++b) {
          const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) |
                                    static_cast<std::uint64_t>(b);
          if (seen.count(key)) continue;
          if (g.has_edge(lcc.original_ids[a], lcc.original_ids[b])) continue;
          seen.insert(key);
          negatives.emplace_back(a, b);
        }
      }
    }
    if (negatives.size() < wanted) {
      // Fewer non-edges exist than removed edges (essentially complete
      // graphs). Proceed unbalanced rather than refusing the split.
      log_warn("only %zu non-edges available for %zu positives",
               negatives.size(), wanted);
    }
  }

  std::vector<LabeledPair> pool;
  pool.reserve(positives.size() + negatives.size());
  for (const auto& [u, v] : positives) pool.push_back({u, v, 1});
  for (const auto& [u, v] : negatives) pool.push_back({u, v, 0});
  {
    Rng rng(derive_seed(seed, {salt::kSplitShuffle}));
    for (std::size_t i = pool.size(); i > 1; --i) {
      std::size_t j = rng.next_below(i);
      std::swap(pool[i - 1], pool[j]);
    }
  }

  LinkPredictionSplit out;
  out.train_graph = std::move(lcc.graph);
  out.num_positives = positives.size();
  out.num_negatives = negatives.size();
  out.removed_edges = n_remove;
  const std::size_t n_pool = pool.size();
  const std::size_t n_tr = static_cast<std::size_t>(0.7 * static_cast<double>(n_pool));
  const std::size_t n_val = static_cast<std::size_t>(0.1 * static_cast<double>(n_pool));
  out.train.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n_tr));
  out.validation.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_tr),
                        pool.begin() + static_cast<std::ptrdiff_t>(n_tr + n_val));
  out.test.assign(pool.begin() + static_cast<std::ptrdiff_t>(n_tr + n_val),
                  pool.end());
  return out;
}

}  // namespace corewalk
