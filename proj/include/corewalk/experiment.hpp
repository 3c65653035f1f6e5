#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "corewalk/embedding.hpp"
#include "corewalk/graph.hpp"
#include "corewalk/logistic.hpp"
#include "corewalk/propagation.hpp"
#include "corewalk/split.hpp"
#include "corewalk/walks.hpp"

namespace corewalk {

enum class Method { kDeepWalk, kCoreWalk, kKCoreProp };

struct MethodSpec {
  Method method = Method::kDeepWalk;
  Method base = Method::kDeepWalk;  // base embedder for kKCoreProp
  int k0 = 2;
};

std::string method_name(const MethodSpec& m);
Method parse_method(const std::string& name);  // ConfigError on unknown

struct ExperimentConfig {
  WalkConfig walk;
  TrainConfig train;
  PropagationConfig prop;
  LogisticConfig logistic;
  double fraction = 0.1;
  int repeats = 5;
  std::uint64_t master_seed = 42;
  int threads = 1;
};

struct RepeatResult {
  double f1_percent = 0;
  TimingBreakdown timing;
};

struct ExperimentReport {
  std::string method;
  int k0 = 0;  // 0 when not applicable
  double fraction = 0;
  double f1_mean = 0;
  double f1_std = 0;
  TimingBreakdown timing_mean;
  TimingBreakdown timing_std;
  bool has_baseline = false;
  double speedup = 0;             // baseline total / this total
  double f1_delta_vs_baseline = 0;  // this mean - baseline mean, in points
  std::vector<RepeatResult> per_repeat;
};

struct EmbedOutcome {
  EmbeddingMatrix emb;
  TimingBreakdown timing;
};

// Embeds train_graph with the requested method, timing each phase. total_s
// covers the whole call. For kKCoreProp, k0 above the graph's degeneracy is
// clamped down with a warning (splits can lower the degeneracy under the
// requested value).
EmbedOutcome embed_with_method(const Graph& train_graph, const MethodSpec& m,
                               const ExperimentConfig& cfg, std::uint64_t seed);

// Features for an edge slot: the two endpoint vectors concatenated, smaller
// node id first so (u,v) and (v,u) give identical features.
void pair_features_into(const EmbeddingMatrix& emb, NodeId u, NodeId v,
                        std::vector<float>& out);

// Full protocol: repeat times, make the split with seed master_seed + r,
// embed the train graph, fit the logistic scorer on the train pairs and
// report F1 (x100) on the test pairs. Embedding timing excludes the
// classifier. When baseline is given, speedup and the F1 delta against it
// are filled in. last_embedding, when non-null, receives the final repeat's
// matrix (for PCA dumps and embedding export).
ExperimentReport run_experiment(const Graph& g, const MethodSpec& m,
                                const ExperimentConfig& cfg,
                                const ExperimentReport* baseline = nullptr,
                                EmbeddingMatrix* last_embedding = nullptr,
                                Graph* last_train_graph = nullptr);

}  // namespace corewalk
