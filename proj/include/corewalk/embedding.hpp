#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "corewalk/graph.hpp"
#include "corewalk/walks.hpp"

namespace corewalk {

struct TrainConfig {
  int dim = 150;
  int window = 4;
  int negatives = 5;
  int epochs = 5;
  float lr_initial = 0.025f;
  float lr_final = 0.0001f;
  std::uint64_t seed = 1;
  bool dynamic_window = false;  // shrink the window per center word when on
  int threads = 1;  // >1 trains lock free and is not bit reproducible
};

// Row major float matrix plus a per-row flag telling whether the vector came
// out of gradient training (true) or was filled in by propagation (false).
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t num_nodes, int dim)
      : data_(num_nodes * static_cast<std::size_t>(dim), 0.0f),
        trained_(num_nodes, 0),
        dim_(dim) {}

  std::size_t num_nodes() const { return trained_.size(); }
  int dim() const { return dim_; }

  std::span<float> row(NodeId v) {
    return {data_.data() + static_cast<std::size_t>(v) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  std::span<const float> row(NodeId v) const {
    return {data_.data() + static_cast<std::size_t>(v) * dim_,
            static_cast<std::size_t>(dim_)};
  }

  bool is_trained(NodeId v) const { return trained_[v] != 0; }
  void set_trained(NodeId v, bool t) { trained_[v] = t ? 1 : 0; }

  float* data() { return data_.data(); }
  const float* data() const { return data_.data(); }

 private:
  std::vector<float> data_;
  std::vector<std::uint8_t> trained_;
  int dim_ = 0;
};

struct TrainStats {
  // Mean negative log likelihood per positive pair, one entry per epoch.
  std::vector<double> epoch_loss;
  std::size_t pairs_per_epoch = 0;
};

// Ordered (center, context) pairs with 0 < |i - j| <= window, excluding
// pairs where both positions hold the same node. Enumeration order: center
// position ascending, context position ascending within the window.
void training_pairs_into(std::span<const NodeId> walk, int window,
                         std::vector<std::pair<NodeId, NodeId>>& out);
std::vector<std::pair<NodeId, NodeId>> training_pairs(
    std::span<const NodeId> walk, int window);

// One positive plus its sampled noise targets; the unit the SGD consumes.
struct SgnsSample {
  NodeId center;
  NodeId context;
  std::vector<NodeId> negatives;
};

// Log likelihood of one sample under the negative sampling objective:
// log s(x_c . y_t) + sum over noise z of log s(-x_c . y_z). Templated so the
// gradient check can run it in double; the trainer applies the identical
// formula in float with a lookup table sigmoid.
template <class Real>
Real sgns_objective(const Real* input, const Real* output, int dim,
                    const SgnsSample& s) {
  auto dot = [dim](const Real* a, const Real* b) {
    Real acc = 0;
    for (int i = 0; i < dim; ++i) acc += a[i] * b[i];
    return acc;
  };
  auto log_sigmoid = [](Real f) {
    // -log(1 + exp(-f)), stable on both sides.
    if (f > 0) return -std::log1p(std::exp(-f));
    return f - std::log1p(std::exp(f));
  };
  const Real* x = input + static_cast<std::size_t>(s.center) * dim;
  Real ll = log_sigmoid(dot(x, output + static_cast<std::size_t>(s.context) * dim));
  for (NodeId z : s.negatives) {
    ll += log_sigmoid(-dot(x, output + static_cast<std::size_t>(z) * dim));
  }
  return ll;
}

// Gradient of sgns_objective with respect to every entry of both matrices,
// accumulated into grad_input / grad_output (same shapes as the matrices).
// d ll / d y_t = (label - s(x.y_t)) x, d ll / d x = sum (label - s(x.y)) y.
template <class Real>
void sgns_gradient(const Real* input, const Real* output, int dim,
                   const SgnsSample& s, Real* grad_input, Real* grad_output) {
  auto sigmoid = [](Real f) { return Real(1) / (Real(1) + std::exp(-f)); };
  const Real* x = input + static_cast<std::size_t>(s.center) * dim;
  Real* gx = grad_input + static_cast<std::size_t>(s.center) * dim;
  auto target = [&](NodeId t, Real label) {
    const Real* y = output + static_cast<std::size_t>(t) * dim;
    Real* gy = grad_output + static_cast<std::size_t>(t) * dim;
    Real f = 0;
    for (int i = 0; i < dim; ++i) f += x[i] * y[i];
    const Real g = label - sigmoid(f);
    for (int i = 0; i < dim; ++i) {
      gy[i] += g * x[i];
      gx[i] += g * y[i];
    }
  };
  target(s.context, Real(1));
  for (NodeId z : s.negatives) target(z, Real(0));
}

// Skip-gram with negative sampling over the corpus. Input rows start uniform
// in [-0.5/dim, 0.5/dim], output rows at zero; the learning rate decays
// linearly from lr_initial to lr_final across all epochs. Noise is the
// corpus unigram distribution raised to 3/4. The trained flag is set for
// nodes that occur in the corpus.
EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t num_nodes,
                      const TrainConfig& cfg, TrainStats* stats = nullptr);

// Text format: header "num_nodes dim", then one row per node,
// "label v1 .. vdim". Shortest round-trip float formatting.
void save_embedding(const EmbeddingMatrix& emb,
                    std::span<const std::string> labels, std::ostream& out);

struct LoadedEmbedding {
  EmbeddingMatrix matrix;
  std::vector<std::string> labels;
};
LoadedEmbedding load_embedding(std::istream& in);

}  // namespace corewalk
