#include "corewalk/embedding.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "corewalk/error.hpp"
#include "corewalk/rng.hpp"
#include "corewalk/util.hpp"

namespace corewalk {

void training_pairs_into(std::span<const NodeId> walk, int window,
                         std::vector<std::pair<NodeId, NodeId>>& out) {
  out.clear();
  const int len = static_cast<int>(walk.size());
  for (int i = 0; i < len; ++i) {
    const int lo = i - window < 0 ? 0 : i - window;
    const int hi = i + window >= len ? len - 1 : i + window;
    for (int j = lo; j <= hi; ++j) {
      if (j == i) continue;
      if (walk[static_cast<std::size_t>(i)] == walk[static_cast<std::size_t>(j)])
        continue;
      out.emplace_back(walk[static_cast<std::size_t>(i)],
                       walk[static_cast<std::size_t>(j)]);
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> training_pairs(
    std::span<const NodeId> walk, int window) {
  std::vector<std::pair<NodeId, NodeId>> out;
  training_pairs_into(walk, window, out);
  return out;
}

namespace {

constexpr int kSigTableSize = 1024;
constexpr float kMaxExp = 6.0f;

// Precomputed sigmoid and log sigmoid over (-kMaxExp, kMaxExp). Outside the
// range the gradient factor is clamped to its limit values, as usual for
// this family of trainers.
struct SigTable {
  std::array<float, kSigTableSize> sig;
  std::array<float, kSigTableSize> logsig;
  SigTable() {
    for (int i = 0; i < kSigTableSize; ++i) {
      const double x =
          (2.0 * i / (kSigTableSize - 1) - 1.0) * static_cast<double>(kMaxExp);
      const double s = 1.0 / (1.0 + std::exp(-x));
      sig[static_cast<std::size_t>(i)] = static_cast<float>(s);
      logsig[static_cast<std::size_t>(i)] = static_cast<float>(std::log(s));
    }
  }
  static int index(float f) {
    int idx = static_cast<int>((f / kMaxExp + 1.0f) * 0.5f * (kSigTableSize - 1));
    if (idx < 0) idx = 0;
    if (idx >= kSigTableSize) idx = kSigTableSize - 1;
    return idx;
  }
};

const SigTable& sig_table() {
  static const SigTable t;
  return t;
}

// Walker alias method over a fixed weight vector; O(1) draws, deterministic
// construction (stacks filled in ascending index order).
class AliasTable {
 public:
  explicit AliasTable(std::span<const double> weights) {
    const std::size_t n = weights.size();
    prob_.resize(n);
    alias_.resize(n);
    double total = 0;
    for (double w : weights) total += w;
    if (!(total > 0)) throw DataError("noise distribution has zero mass");
    std::vector<double> scaled(n);
    for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < n; ++i) {
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const std::uint32_t s = small.back();
      small.pop_back();
      const std::uint32_t l = large.back();
      large.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = scaled[l] + scaled[s] - 1.0;
      (scaled[l] < 1.0 ? small : large).push_back(l);
    }
    for (std::uint32_t i : large) {
      prob_[i] = 1.0;
      alias_[i] = i;
    }
    for (std::uint32_t i : small) {
      prob_[i] = 1.0;
      alias_[i] = i;
    }
  }

  NodeId sample(Rng& rng) const {
    const std::size_t i = rng.next_below(prob_.size());
    return rng.next_double() < prob_[i] ? static_cast<NodeId>(i) : alias_[i];
  }

 private:
  std::vector<double> prob_;
  std::vector<NodeId> alias_;
};

inline float dot_f(const float* __restrict a, const float* __restrict b,
                   int dim) {
  float acc = 0.0f;
  for (int i = 0; i < dim; ++i) acc += a[i] * b[i];
  return acc;
}

struct EpochAccum {
  double loss_sum = 0;
  std::size_t pairs = 0;
};

}  // namespace

EmbeddingMatrix train(const WalkCorpus& corpus, std::size_t num_nodes,
                      const TrainConfig& cfg, TrainStats* stats) {
  if (cfg.dim < 1) throw ConfigError("embedding dim must be >= 1");
  if (cfg.window < 1) throw ConfigError("window must be >= 1");
  if (cfg.negatives < 1) throw ConfigError("negatives must be >= 1");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(cfg.lr_initial > cfg.lr_final) || !(cfg.lr_final > 0)) {
    throw ConfigError("need lr_initial > lr_final > 0");
  }
  if (corpus.walks.empty()) throw DataError("training corpus is empty");

  const int dim = cfg.dim;
  std::vector<std::int64_t> freq(num_nodes, 0);
  for (const auto& walk : corpus.walks) {
    for (NodeId v : walk) {
      if (v >= num_nodes) {
        throw std::out_of_range("corpus references node beyond num_nodes");
      }
      ++freq[v];
    }
  }

  std::vector<double> noise(num_nodes);
  for (std::size_t v = 0; v < num_nodes; ++v) {
    noise[v] = freq[v] > 0 ? std::pow(static_cast<double>(freq[v]), 0.75) : 0.0;
  }
  const AliasTable alias(noise);

  // Exact pair count fixes the linear learning rate schedule up front.
  std::size_t pairs_per_epoch = 0;
  {
    std::vector<std::pair<NodeId, NodeId>> buf;
    for (const auto& walk : corpus.walks) {
      training_pairs_into(walk, cfg.window, buf);
      pairs_per_epoch += buf.size();
    }
  }
  if (pairs_per_epoch == 0) throw DataError("corpus yields no training pairs");

  EmbeddingMatrix emb(num_nodes, dim);
  {
    Rng init_rng(derive_seed(cfg.seed, {salt::kEmbedInit}));
    float* x = emb.data();
    const std::size_t total = num_nodes * static_cast<std::size_t>(dim);
    const float scale = 1.0f / static_cast<float>(dim);
    for (std::size_t i = 0; i < total; ++i) {
      x[i] = (init_rng.next_float() - 0.5f) * scale;
    }
    for (std::size_t v = 0; v < num_nodes; ++v) {
      emb.set_trained(static_cast<NodeId>(v), freq[v] > 0);
    }
  }
  std::vector<float> ctx(num_nodes * static_cast<std::size_t>(dim), 0.0f);

  const SigTable& table = sig_table();
  const double total_updates =
      static_cast<double>(pairs_per_epoch) * cfg.epochs;
  const double lr_span =
      static_cast<double>(cfg.lr_initial) - static_cast<double>(cfg.lr_final);
  std::atomic<std::size_t> processed{0};

  if (stats != nullptr) {
    stats->epoch_loss.clear();
    stats->pairs_per_epoch = pairs_per_epoch;
  }

  // One positive pair + negatives, fused forward/backward as in the usual
  // word2vec inner loop: the center update buffer reads pre-update context
  // rows, so the whole step is the exact gradient at the current iterate.
  auto train_range = [&](std::size_t walk_begin, std::size_t walk_end,
                         Rng& rng, EpochAccum& acc) {
    std::vector<std::pair<NodeId, NodeId>> pairs;
    std::vector<float> neu1e(static_cast<std::size_t>(dim));
    for (std::size_t wi = walk_begin; wi < walk_end; ++wi) {
      const auto& walk = corpus.walks[wi];
      if (cfg.dynamic_window) {
        // word2vec style: each center position uses a window shrunk by a
        // uniform amount in [0, window).
        pairs.clear();
        const int len = static_cast<int>(walk.size());
        for (int i = 0; i < len; ++i) {
          const int w = cfg.window - static_cast<int>(rng.next_below(
                                         static_cast<std::uint64_t>(cfg.window)));
          const int lo = i - w < 0 ? 0 : i - w;
          const int hi = i + w >= len ? len - 1 : i + w;
          for (int j = lo; j <= hi; ++j) {
            if (j == i) continue;
            if (walk[static_cast<std::size_t>(i)] ==
                walk[static_cast<std::size_t>(j)])
              continue;
            pairs.emplace_back(walk[static_cast<std::size_t>(i)],
                               walk[static_cast<std::size_t>(j)]);
          }
        }
      } else {
        training_pairs_into(walk, cfg.window, pairs);
      }
      for (const auto& [center, context] : pairs) {
        const std::size_t done = processed.fetch_add(1, std::memory_order_relaxed);
        double a = static_cast<double>(cfg.lr_initial) -
                   lr_span * static_cast<double>(done) / total_updates;
        if (a < cfg.lr_final) a = cfg.lr_final;
        const float alpha = static_cast<float>(a);

        float* __restrict x = emb.row(center).data();
        std::memset(neu1e.data(), 0, sizeof(float) * static_cast<std::size_t>(dim));
        double pair_loss = 0;
        auto step = [&](NodeId tgt, float label) {
          float* __restrict y = ctx.data() + static_cast<std::size_t>(tgt) * dim;
          const float f = dot_f(x, y, dim);
          float g;
          // loss terms: positives contribute -log s(f), negatives
          // -log s(-f) = f - log s(f); clamped regions use the limits.
          if (f > kMaxExp) {
            g = (label - 1.0f) * alpha;
            pair_loss += label > 0.5f ? 0.0 : static_cast<double>(f);
          } else if (f < -kMaxExp) {
            g = label * alpha;
            pair_loss += label > 0.5f ? static_cast<double>(-f) : 0.0;
          } else {
            const int idx = SigTable::index(f);
            g = (label - table.sig[static_cast<std::size_t>(idx)]) * alpha;
            const double ls =
                static_cast<double>(table.logsig[static_cast<std::size_t>(idx)]);
            pair_loss += label > 0.5f ? -ls : static_cast<double>(f) - ls;
          }
          float* __restrict e = neu1e.data();
          for (int i = 0; i < dim; ++i) e[i] += g * y[i];
          for (int i = 0; i < dim; ++i) y[i] += g * x[i];
        };
        step(context, 1.0f);
        for (int k = 0; k < cfg.negatives; ++k) {
          const NodeId z = alias.sample(rng);
          if (z == context) continue;  // skip, do not redraw
          step(z, 0.0f);
        }
        const float* __restrict e = neu1e.data();
        for (int i = 0; i < dim; ++i) x[i] += e[i];
        acc.loss_sum += pair_loss;
        acc.pairs += 1;
      }
    }
  };

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    EpochAccum total_acc;
    if (cfg.threads <= 1) {
      Rng rng(derive_seed(cfg.seed,
                          {salt::kEmbedTrain, static_cast<std::uint64_t>(epoch)}));
      train_range(0, corpus.walks.size(), rng, total_acc);
    } else {
      const int nt = cfg.threads;
      std::vector<EpochAccum> accs(static_cast<std::size_t>(nt));
      std::vector<std::thread> pool;
      const std::size_t nw = corpus.walks.size();
      const std::size_t chunk = (nw + static_cast<std::size_t>(nt) - 1) /
                                static_cast<std::size_t>(nt);
      for (int t = 0; t < nt; ++t) {
        const std::size_t b = static_cast<std::size_t>(t) * chunk;
        const std::size_t e = std::min(b + chunk, nw);
        if (b >= e) break;
        pool.emplace_back([&, t, b, e] {
          Rng rng(derive_seed(cfg.seed, {salt::kEmbedTrain,
                                         static_cast<std::uint64_t>(epoch),
                                         static_cast<std::uint64_t>(t)}));
          train_range(b, e, rng, accs[static_cast<std::size_t>(t)]);
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& a : accs) {
        total_acc.loss_sum += a.loss_sum;
        total_acc.pairs += a.pairs;
      }
    }
    if (stats != nullptr) {
      stats->epoch_loss.push_back(
          total_acc.pairs > 0 ? total_acc.loss_sum / static_cast<double>(total_acc.pairs)
                              : 0.0);
    }
  }
  return emb;
}

void save_embedding(const EmbeddingMatrix& emb,
                    std::span<const std::string> labels, std::ostream& out) {
  if (labels.size() != emb.num_nodes()) {
    throw Error("save_embedding: label count mismatch");
  }
  out << emb.num_nodes() << ' ' << emb.dim() << '\n';
  char buf[64];
  for (NodeId v = 0; v < emb.num_nodes(); ++v) {
    out << labels[v];
    for (float x : emb.row(v)) {
      auto res = std::to_chars(buf, buf + sizeof(buf), x);
      out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

LoadedEmbedding load_embedding(std::istream& in) {
  std::size_t n = 0;
  int dim = 0;
  in >> n >> dim;
  if (!in || dim < 1) throw DataError("bad embedding header");
  LoadedEmbedding out;
  out.matrix = EmbeddingMatrix(n, dim);
  out.labels.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    in >> out.labels[v];
    auto row = out.matrix.row(static_cast<NodeId>(v));
    for (int i = 0; i < dim; ++i) in >> row[static_cast<std::size_t>(i)];
    out.matrix.set_trained(static_cast<NodeId>(v), true);
  }
  if (!in) throw DataError("truncated embedding file");
  return out;
}

}  // namespace corewalk
