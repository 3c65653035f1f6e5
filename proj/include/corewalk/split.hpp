#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "corewalk/graph.hpp"

namespace corewalk {

// Node ids in these pairs refer to the train graph.
struct LabeledPair {
  NodeId u;
  NodeId v;
  int label;  // 1 = removed edge, 0 = sampled non-edge
};

struct LinkPredictionSplit {
  Graph train_graph;  // LCC of the input minus the removed edges
  std::vector<LabeledPair> train;
  std::vector<LabeledPair> validation;
  std::vector<LabeledPair> test;
  std::size_t num_positives = 0;
  std::size_t num_negatives = 0;
  std::size_t removed_edges = 0;
};

// Removes floor(fraction * |E|) uniformly chosen edges, re-extracts the LCC
// of what is left, keeps the removed edges whose endpoints both survive as
// positives, and samples an equal number of distinct non-edges of the input
// graph among surviving nodes as negatives. The pooled pairs are shuffled
// and split 70/10/20. Throws ConfigError unless 0 < fraction < 1 and
// DataError when the removal leaves no edges.
LinkPredictionSplit make_split(const Graph& g, double fraction,
                               std::uint64_t seed);

}  // namespace corewalk
