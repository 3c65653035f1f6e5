#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "corewalk/graph.hpp"
#include "corewalk/kcore.hpp"
#include "corewalk/rng.hpp"

namespace corewalk {

struct WalkConfig {
  int walks_per_node = 15;
  int walk_length = 30;
  std::uint64_t seed = 1;
};

enum class WalkSchedule {
  kFixed,         // walks_per_node walks from every node
  kCoreAdaptive,  // budget scales with the node's core index
};

struct WalkCorpus {
  std::vector<std::vector<NodeId>> walks;
  std::vector<NodeId> root_of;  // parallel to walks
  std::size_t total_tokens() const {
    std::size_t n = 0;
    for (const auto& w : walks) n += w.size();
    return n;
  }
};

// Number of walks rooted at a node with the given core index:
// max(floor(n * k / degeneracy), 1). Exact integer arithmetic.
int walk_budget(int core_index, int degeneracy, int walks_per_node);

// Uniform neighbour steps, walk[0] = root. Throws Error on a degree-0 root;
// mid-walk truncation is impossible on an undirected graph.
std::vector<NodeId> random_walk(const Graph& g, NodeId root, int length,
                                Rng& rng);

// Every walk draws from its own (seed, root, walk_index) stream and the final
// order is one seeded global shuffle, so the corpus is identical for every
// thread count. kCoreAdaptive requires cores.
WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg,
                           WalkSchedule schedule,
                           const CoreDecomposition* cores = nullptr,
                           int threads = 1);

// One walk per line, space separated external labels.
void write_corpus(const WalkCorpus& corpus, const Graph& g, std::ostream& out);

}  // namespace corewalk
