#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "corewalk/embedding.hpp"
#include "corewalk/graph.hpp"
#include "corewalk/kcore.hpp"

namespace corewalk {

struct PropagationConfig {
  int k0 = 2;
  int max_iterations = 100;
  double tolerance = 1e-6;
  // When true, shell pieces with no path to the embedded set get the zero
  // vector and a warning instead of IsolatedShellError.
  bool allow_isolated = false;
};

struct TimingBreakdown {
  double core_decomposition_s = 0;
  double embedding_s = 0;
  double propagation_s = 0;
  double total_s = 0;
};

struct PropagateStepStats {
  int iterations = 0;
  double final_delta = 0;   // max coordinate change in the last sweep
  double residual = 0;      // max |x_v - mean over eligible neighbours|
  std::vector<NodeId> isolated;
};

// One shell: solves x_v = mean of x_u over neighbours u that are embedded or
// in new_nodes, Jacobi style with double buffers, anchored by the embedded
// rows of emb. Unknowns start at the mean of their embedded neighbours (zero
// when they have none). Writes results into emb; trained flags of new nodes
// stay false.
PropagateStepStats propagate_step(const Graph& g,
                                  const std::vector<std::uint8_t>& embedded,
                                  std::span<const NodeId> new_nodes,
                                  EmbeddingMatrix& emb,
                                  const PropagationConfig& cfg,
                                  int threads = 1);

using BaseEmbedder = std::function<EmbeddingMatrix(const Graph&)>;

// Embeds the k0-core with base, then fills shells k0-1 down to 1 one
// propagate_step each. decomposition_seconds is the caller's measured cost of
// producing d; it lands in the returned breakdown, whose total is the sum of
// the three phases (callers owning a wider wall clock may overwrite it).
std::pair<EmbeddingMatrix, TimingBreakdown> propagate_full(
    const Graph& g, const CoreDecomposition& d, const BaseEmbedder& base,
    const PropagationConfig& cfg, int threads = 1,
    double decomposition_seconds = 0.0);

}  // namespace corewalk
