#include "corewalk/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "corewalk/error.hpp"
#include "corewalk/kcore.hpp"
#include "corewalk/log.hpp"
#include "corewalk/metrics.hpp"
#include "corewalk/rng.hpp"
#include "corewalk/util.hpp"

namespace corewalk {

std::string method_name(const MethodSpec& m) {
  switch (m.method) {
    case Method::kDeepWalk:
      return "deepwalk";
    case Method::kCoreWalk:
      return "corewalk";
    case Method::kKCoreProp: {
      std::string base =
          m.base == Method::kCoreWalk ? "corewalk" : "deepwalk";
      // No comma: the name lands in a CSV column.
      return "kcore-prop[k0=" + std::to_string(m.k0) + ";base=" + base + "]";
    }
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "deepwalk") return Method::kDeepWalk;
  if (name == "corewalk") return Method::kCoreWalk;
  if (name == "kcore-prop") return Method::kKCoreProp;
  throw ConfigError("unknown method: " + name);
}

namespace {

EmbeddingMatrix embed_by_walks(const Graph& g, Method method,
                               const ExperimentConfig& cfg, std::uint64_t seed,
                               double* decomp_seconds) {
  WalkConfig wc = cfg.walk;
  wc.seed = seed;
  TrainConfig tc = cfg.train;
  tc.seed = seed;
  tc.threads = cfg.threads;

  WalkCorpus corpus;
  if (method == Method::kCoreWalk) {
    Timer t;
    CoreDecomposition d = decompose(g);
    if (decomp_seconds != nullptr) *decomp_seconds = t.seconds();
    corpus = generate_corpus(g, wc, WalkSchedule::kCoreAdaptive, &d,
                             cfg.threads);
  } else {
    corpus = generate_corpus(g, wc, WalkSchedule::kFixed, nullptr, cfg.threads);
  }
  return train(corpus, g.num_nodes(), tc);
}

}  // namespace

EmbedOutcome embed_with_method(const Graph& train_graph, const MethodSpec& m,
                               const ExperimentConfig& cfg,
                               std::uint64_t seed) {
  EmbedOutcome out;
  Timer total;
  switch (m.method) {
    case Method::kDeepWalk:
    case Method::kCoreWalk: {
      double decomp = 0;
      Timer t;
      out.emb = embed_by_walks(train_graph, m.method, cfg, seed, &decomp);
      out.timing.core_decomposition_s = decomp;
      out.timing.embedding_s = t.seconds() - decomp;
      break;
    }
    case Method::kKCoreProp: {
      Timer td;
      CoreDecomposition d = decompose(train_graph);
      const double decomp_s = td.seconds();
      PropagationConfig prop = cfg.prop;
      prop.k0 = m.k0;
      if (prop.k0 > d.degeneracy) {
        log_warn("k0=%d exceeds degeneracy %d of this train graph; clamping",
                 prop.k0, d.degeneracy);
        prop.k0 = d.degeneracy;
      }
      if (prop.k0 < 1) throw ConfigError("k0 must be >= 1");
      BaseEmbedder base = [&](const Graph& sub) {
        return embed_by_walks(sub, m.base, cfg, seed, nullptr);
      };
      auto [emb, timing] =
          propagate_full(train_graph, d, base, prop, cfg.threads, decomp_s);
      out.emb = std::move(emb);
      out.timing = timing;
      break;
    }
  }
  out.timing.total_s = total.seconds();
  return out;
}

void pair_features_into(const EmbeddingMatrix& emb, NodeId u, NodeId v,
                        std::vector<float>& out) {
  if (u >= emb.num_nodes() || v >= emb.num_nodes()) {
    throw DataError("pair features: node has no embedding row");
  }
  if (u > v) std::swap(u, v);
  const auto a = emb.row(u);
  const auto b = emb.row(v);
  out.resize(a.size() + b.size());
  std::copy(a.begin(), a.end(), out.begin());
  std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(a.size()));
}

namespace {

void fill_features(const EmbeddingMatrix& emb,
                   const std::vector<LabeledPair>& pairs, FeatureMatrix& x,
                   std::vector<int>& y) {
  std::vector<float> buf;
  for (const auto& p : pairs) {
    pair_features_into(emb, p.u, p.v, buf);
    x.add_row(buf);
    y.push_back(p.label);
  }
}

TimingBreakdown mean_timing(const std::vector<RepeatResult>& rs) {
  TimingBreakdown m;
  if (rs.empty()) return m;
  for (const auto& r : rs) {
    m.core_decomposition_s += r.timing.core_decomposition_s;
    m.embedding_s += r.timing.embedding_s;
    m.propagation_s += r.timing.propagation_s;
    m.total_s += r.timing.total_s;
  }
  const double inv = 1.0 / static_cast<double>(rs.size());
  m.core_decomposition_s *= inv;
  m.embedding_s *= inv;
  m.propagation_s *= inv;
  m.total_s *= inv;
  return m;
}

TimingBreakdown std_timing(const std::vector<RepeatResult>& rs,
                           const TimingBreakdown& mean) {
  TimingBreakdown s;
  if (rs.size() < 2) return s;
  for (const auto& r : rs) {
    auto sq = [](double x) { return x * x; };
    s.core_decomposition_s += sq(r.timing.core_decomposition_s - mean.core_decomposition_s);
    s.embedding_s += sq(r.timing.embedding_s - mean.embedding_s);
    s.propagation_s += sq(r.timing.propagation_s - mean.propagation_s);
    s.total_s += sq(r.timing.total_s - mean.total_s);
  }
  const double inv = 1.0 / static_cast<double>(rs.size() - 1);
  s.core_decomposition_s = std::sqrt(s.core_decomposition_s * inv);
  s.embedding_s = std::sqrt(s.embedding_s * inv);
  s.propagation_s = std::sqrt(s.propagation_s * inv);
  s.total_s = std::sqrt(s.total_s * inv);
  return s;
}

}  // namespace

ExperimentReport run_experiment(const Graph& g, const MethodSpec& m,
                                const ExperimentConfig& cfg,
                                const ExperimentReport* baseline,
                                EmbeddingMatrix* last_embedding,
                                Graph* last_train_graph) {
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");

  ExperimentReport report;
  report.method = method_name(m);
  report.k0 = m.method == Method::kKCoreProp ? m.k0 : 0;
  report.fraction = cfg.fraction;

  for (int r = 0; r < cfg.repeats; ++r) {
    const std::uint64_t seed = cfg.master_seed + static_cast<std::uint64_t>(r);
    LinkPredictionSplit split = make_split(g, cfg.fraction, seed);
    EmbedOutcome outcome = embed_with_method(split.train_graph, m, cfg, seed);

    FeatureMatrix x_train, x_test;
    std::vector<int> y_train, y_test;
    fill_features(outcome.emb, split.train, x_train, y_train);
    fill_features(outcome.emb, split.test, x_test, y_test);
    LogisticModel model =
        train_logistic(x_train, y_train, cfg.logistic, seed);

    std::vector<int> pred;
    pred.reserve(x_test.rows);
    for (std::size_t i = 0; i < x_test.rows; ++i) {
      pred.push_back(model.predict(x_test.row(i)));
    }
    RepeatResult rr;
    rr.f1_percent = 100.0 * f1_score(pred, y_test);
    rr.timing = outcome.timing;
    report.per_repeat.push_back(rr);
    log_info("%s repeat %d: f1=%.2f total=%.2fs", report.method.c_str(), r,
             rr.f1_percent, rr.timing.total_s);

    if (r == cfg.repeats - 1) {
      if (last_embedding != nullptr) *last_embedding = std::move(outcome.emb);
      if (last_train_graph != nullptr) *last_train_graph = std::move(split.train_graph);
    }
  }

  double sum = 0;
  for (const auto& rr : report.per_repeat) sum += rr.f1_percent;
  report.f1_mean = sum / static_cast<double>(report.per_repeat.size());
  if (report.per_repeat.size() > 1) {
    double ss = 0;
    for (const auto& rr : report.per_repeat) {
      ss += (rr.f1_percent - report.f1_mean) * (rr.f1_percent - report.f1_mean);
    }
    report.f1_std =
        std::sqrt(ss / static_cast<double>(report.per_repeat.size() - 1));
  }
  report.timing_mean = mean_timing(report.per_repeat);
  report.timing_std = std_timing(report.per_repeat, report.timing_mean);

  if (baseline != nullptr) {
    report.has_baseline = true;
    report.speedup = baseline->timing_mean.total_s > 0
                         ? baseline->timing_mean.total_s / report.timing_mean.total_s
                         : 0;
    report.f1_delta_vs_baseline = report.f1_mean - baseline->f1_mean;
  }
  return report;
}

}  // namespace corewalk
