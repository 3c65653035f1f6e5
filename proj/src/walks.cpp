#include "corewalk/walks.hpp"

#include <cassert>
#include <numeric>
#include <ostream>

#include "corewalk/error.hpp"
#include "corewalk/util.hpp"

namespace corewalk {

int walk_budget(int core_index, int degeneracy, int walks_per_node) {
  if (core_index < 1 || degeneracy < 1 || core_index > degeneracy) {
    throw ConfigError("walk_budget: need 1 <= core_index <= degeneracy");
  }
  if (walks_per_node < 1) throw ConfigError("walk_budget: walks_per_node < 1");
  const std::int64_t scaled =
      static_cast<std::int64_t>(walks_per_node) * core_index / degeneracy;
  return scaled < 1 ? 1 : static_cast<int>(scaled);
}

std::vector<NodeId> random_walk(const Graph& g, NodeId root, int length,
                                Rng& rng) {
  if (root >= g.num_nodes()) {
    throw std::out_of_range("random_walk: root out of range");
  }
  if (g.degree(root) == 0) {
    throw Error("random_walk: root " + g.label(root) + " has degree 0");
  }
  if (length < 1) throw ConfigError("random_walk: length < 1");
  std::vector<NodeId> walk(static_cast<std::size_t>(length));
  walk[0] = root;
  NodeId cur = root;
  for (int t = 1; t < length; ++t) {
    auto ns = g.neighbours(cur);
    assert(!ns.empty());  // we arrived here over an edge
    cur = ns[rng.next_below(ns.size())];
    walk[static_cast<std::size_t>(t)] = cur;
  }
  return walk;
}

WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg,
                           WalkSchedule schedule,
                           const CoreDecomposition* cores, int threads) {
  if (cfg.walks_per_node < 1) throw ConfigError("walks per node must be >= 1");
  if (cfg.walk_length < 2) throw ConfigError("walk length must be >= 2");
  const NodeId n = g.num_nodes();
  if (n == 0 || g.num_edges() == 0) {
    throw DataError("cannot generate walks on an edgeless graph");
  }

  std::vector<int> budget(n);
  if (schedule == WalkSchedule::kFixed) {
    for (NodeId v = 0; v < n; ++v) budget[v] = cfg.walks_per_node;
  } else {
    if (cores == nullptr || cores->core_index.size() != n) {
      throw ConfigError("core adaptive schedule needs a matching decomposition");
    }
    for (NodeId v = 0; v < n; ++v) {
      budget[v] = walk_budget(cores->core_index[v], cores->degeneracy,
                              cfg.walks_per_node);
    }
  }

  std::vector<std::size_t> offset(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    offset[v + 1] = offset[v] + static_cast<std::size_t>(budget[v]);
  }
  const std::size_t total = offset[n];

  WalkCorpus corpus;
  corpus.walks.resize(total);
  corpus.root_of.resize(total);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      const NodeId root = static_cast<NodeId>(v);
      for (int j = 0; j < budget[v]; ++j) {
        Rng rng(derive_seed(cfg.seed,
                            {salt::kWalks, root, static_cast<std::uint64_t>(j)}));
        const std::size_t slot = offset[v] + static_cast<std::size_t>(j);
        corpus.walks[slot] = random_walk(g, root, cfg.walk_length, rng);
        corpus.root_of[slot] = root;
      }
    }
  });

  // Seeded Fisher-Yates over walk slots; mixes roots so SGD does not see one
  // node's walks back to back.
  std::vector<std::size_t> perm(total);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng shuffle_rng(derive_seed(cfg.seed, {salt::kWalkShuffle}));
  for (std::size_t i = total; i > 1; --i) {
    std::size_t j = shuffle_rng.next_below(i);
    std::swap(perm[i - 1], perm[j]);
  }
  WalkCorpus shuffled;
  shuffled.walks.resize(total);
  shuffled.root_of.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    shuffled.walks[i] = std::move(corpus.walks[perm[i]]);
    shuffled.root_of[i] = corpus.root_of[perm[i]];
  }
  return shuffled;
}

void write_corpus(const WalkCorpus& corpus, const Graph& g,
                  std::ostream& out) {
  for (const auto& walk : corpus.walks) {
    for (std::size_t i = 0; i < walk.size(); ++i) {
      if (i > 0) out << ' ';
      out << g.label(walk[i]);
    }
    out << '\n';
  }
}

}  // namespace corewalk
