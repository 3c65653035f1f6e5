#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <vector>

#include "corewalk/embedding.hpp"
#include "corewalk/error.hpp"
#include "corewalk/walks.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace corewalk;
using test::clique;
using test::er_graph;

namespace {

float cosine(std::span<const float> a, std::span<const float> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += double(a[i]) * b[i];
    na += double(a[i]) * a[i];
    nb += double(b[i]) * b[i];
  }
  return static_cast<float>(dot / std::sqrt(na * nb));
}

// Two 6-cliques joined by one edge. Intra-clique pairs co-occur in nearly
// every walk window, the bridge pair only rarely.
Graph barbell() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < 6; ++i)
    for (NodeId j = i + 1; j < 6; ++j) edges.emplace_back(i, j);
  for (NodeId i = 6; i < 12; ++i)
    for (NodeId j = i + 1; j < 12; ++j) edges.emplace_back(i, j);
  edges.emplace_back(5, 6);
  return graph_from_edges(12, edges);
}

}  // namespace

TEST_CASE("skip gram pairs enumerate the window in order") {
  std::vector<NodeId> walk = {0, 1, 0};
  auto pairs = training_pairs(walk, 2);
  std::vector<std::pair<NodeId, NodeId>> want = {{0, 1}, {1, 0}, {1, 0}, {0, 1}};
  CHECK(pairs == want);
}

TEST_CASE("pairs with identical endpoints are dropped") {
  std::vector<NodeId> walk = {3, 3, 3, 3};
  CHECK(training_pairs(walk, 2).empty());
}

TEST_CASE("pair count matches the window arithmetic on distinct tokens") {
  // Tokens all distinct, so nothing is dropped: count = sum over i of
  // |[i-w, i+w] intersect [0, L) minus {i}|.
  std::vector<NodeId> walk = {0, 1, 2, 3, 4, 5, 6};
  for (int w = 1; w <= 3; ++w) {
    std::size_t want = 0;
    int L = static_cast<int>(walk.size());
    for (int i = 0; i < L; ++i) {
      int lo = std::max(0, i - w), hi = std::min(L - 1, i + w);
      want += static_cast<std::size_t>(hi - lo);
    }
    CHECK(training_pairs(walk, w).size() == want);
  }
}

TEST_CASE("objective gradient agrees with finite differences") {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> unif(-0.8, 0.8);
  const int dim = 5;
  const int n = 6;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<double> input(n * dim), output(n * dim);
    for (auto& v : input) v = unif(gen);
    for (auto& v : output) v = unif(gen);
    SgnsSample s;
    s.center = 0;
    s.context = 1 + trial % 2;
    s.negatives = {3, 4, 5};
    std::vector<double> gi(n * dim, 0.0), go(n * dim, 0.0);
    sgns_gradient(input.data(), output.data(), dim, s, gi.data(), go.data());
    const double h = 1e-6;
    auto check_block = [&](std::vector<double>& mat, const std::vector<double>& grad) {
      for (int idx = 0; idx < n * dim; ++idx) {
        double keep = mat[idx];
        mat[idx] = keep + h;
        double up = sgns_objective(input.data(), output.data(), dim, s);
        mat[idx] = keep - h;
        double dn = sgns_objective(input.data(), output.data(), dim, s);
        mat[idx] = keep;
        double fd = (up - dn) / (2 * h);
        CHECK(grad[idx] == doctest::Approx(fd).epsilon(1e-4));
      }
    };
    check_block(input, gi);
    check_block(output, go);
  }
}

TEST_CASE("training separates the two halves of a barbell") {
  Graph g = barbell();
  WalkConfig wc;
  wc.walks_per_node = 30;
  wc.walk_length = 20;
  wc.seed = 9;
  WalkCorpus corpus = generate_corpus(g, wc, WalkSchedule::kFixed);
  TrainConfig tc;
  tc.dim = 16;
  tc.window = 3;
  tc.negatives = 5;
  tc.epochs = 8;
  tc.seed = 9;
  TrainStats stats;
  EmbeddingMatrix emb = train(corpus, g.num_nodes(), tc, &stats);
  REQUIRE(emb.num_nodes() == 12);
  REQUIRE(emb.dim() == 16);
  for (NodeId v = 0; v < 12; ++v) CHECK(emb.is_trained(v));

  double intra = 0.0, inter = 0.0;
  int n_intra = 0, n_inter = 0;
  for (NodeId u = 0; u < 12; ++u) {
    for (NodeId v = u + 1; v < 12; ++v) {
      bool same = (u < 6) == (v < 6);
      float c = cosine(emb.row(u), emb.row(v));
      (same ? intra : inter) += c;
      (same ? n_intra : n_inter)++;
    }
  }
  intra /= n_intra;
  inter /= n_inter;
  CHECK(intra > inter + 0.2);
}

TEST_CASE("epoch loss goes down over training") {
  Graph g = barbell();
  WalkConfig wc;
  wc.walks_per_node = 20;
  wc.walk_length = 15;
  wc.seed = 21;
  WalkCorpus corpus = generate_corpus(g, wc, WalkSchedule::kFixed);
  TrainConfig tc;
  tc.dim = 12;
  tc.window = 3;
  tc.epochs = 6;
  tc.seed = 21;
  TrainStats stats;
  train(corpus, g.num_nodes(), tc, &stats);
  REQUIRE(stats.epoch_loss.size() == 6);
  // The first epoch already trains, so the drop across epochs is modest on
  // a corpus this small; require a clear decrease, not a collapse.
  CHECK(stats.epoch_loss.back() < stats.epoch_loss.front() - 0.05);
  CHECK(stats.pairs_per_epoch > 0);
}

TEST_CASE("single threaded training is reproducible") {
  Graph g = largest_connected_component(er_graph(20, 0.25, 31));
  WalkConfig wc;
  wc.walks_per_node = 5;
  wc.walk_length = 10;
  wc.seed = 4;
  WalkCorpus corpus = generate_corpus(g, wc, WalkSchedule::kFixed);
  TrainConfig tc;
  tc.dim = 8;
  tc.epochs = 2;
  tc.seed = 4;
  EmbeddingMatrix a = train(corpus, g.num_nodes(), tc, nullptr);
  EmbeddingMatrix b = train(corpus, g.num_nodes(), tc, nullptr);
  REQUIRE(a.num_nodes() == b.num_nodes());
  for (NodeId v = 0; v < a.num_nodes(); ++v) {
    auto ra = a.row(v), rb = b.row(v);
    for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i] == rb[i]);
  }
  tc.seed = 5;
  EmbeddingMatrix c = train(corpus, g.num_nodes(), tc, nullptr);
  bool any_diff = false;
  for (NodeId v = 0; v < a.num_nodes() && !any_diff; ++v) {
    auto ra = a.row(v), rc = c.row(v);
    for (std::size_t i = 0; i < ra.size(); ++i)
      if (ra[i] != rc[i]) { any_diff = true; break; }
  }
  CHECK(any_diff);
}

TEST_CASE("an embedding survives a save and load round trip") {
  Graph g = largest_connected_component(er_graph(15, 0.3, 61));
  WalkConfig wc;
  wc.walks_per_node = 3;
  wc.walk_length = 8;
  wc.seed = 8;
  WalkCorpus corpus = generate_corpus(g, wc, WalkSchedule::kFixed);
  TrainConfig tc;
  tc.dim = 6;
  tc.epochs = 1;
  tc.seed = 8;
  EmbeddingMatrix emb = train(corpus, g.num_nodes(), tc, nullptr);

  auto path = std::filesystem::temp_directory_path() / "corewalk_emb_test.txt";
  {
    std::ofstream out(path);
    save_embedding(emb, g.labels(), out);
  }
  std::ifstream in(path);
  LoadedEmbedding back = load_embedding(in);
  std::filesystem::remove(path);
  REQUIRE(back.matrix.num_nodes() == emb.num_nodes());
  REQUIRE(back.matrix.dim() == emb.dim());
  REQUIRE(back.labels.size() == g.labels().size());
  for (NodeId v = 0; v < emb.num_nodes(); ++v) {
    CHECK(back.labels[v] == g.label(v));
    auto a = emb.row(v), b = back.matrix.row(v);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  }
}

TEST_CASE("training rejects bad configuration and empty corpora") {
  Graph g = clique(3);
  WalkConfig wc;
  wc.walks_per_node = 1;
  wc.walk_length = 4;
  WalkCorpus corpus = generate_corpus(g, wc, WalkSchedule::kFixed);
  TrainConfig tc;
  tc.dim = 0;
  CHECK_THROWS_AS(train(corpus, g.num_nodes(), tc, nullptr), ConfigError);
  tc = TrainConfig{};
  tc.lr_initial = 0.0001f;
  tc.lr_final = 0.025f;
  CHECK_THROWS_AS(train(corpus, g.num_nodes(), tc, nullptr), ConfigError);
  WalkCorpus empty;
  tc = TrainConfig{};
  CHECK_THROWS_AS(train(empty, g.num_nodes(), tc, nullptr), DataError);
}
