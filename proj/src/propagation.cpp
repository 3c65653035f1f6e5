#include "corewalk/propagation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

#include "corewalk/error.hpp"
#include "corewalk/log.hpp"
#include "corewalk/util.hpp"

namespace corewalk {

PropagateStepStats propagate_step(const Graph& g,
                                  const std::vector<std::uint8_t>& embedded,
                                  std::span<const NodeId> new_nodes,
                                  EmbeddingMatrix& emb,
                                  const PropagationConfig& cfg, int threads) {
  if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(cfg.tolerance > 0)) throw ConfigError("tolerance must be > 0");
  if (embedded.size() != g.num_nodes() || emb.num_nodes() != g.num_nodes()) {
    throw Error("propagate_step: size mismatch");
  }

  const int dim = emb.dim();
  const std::size_t n_new = new_nodes.size();
  PropagateStepStats stats;
  if (n_new == 0) return stats;

  constexpr std::uint32_t kAbsent = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> local(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < n_new; ++i) {
    const NodeId v = new_nodes[i];
    if (embedded[v]) throw Error("propagate_step: new node already embedded");
    local[v] = static_cast<std::uint32_t>(i);
  }

  // Per unknown: the (fixed) sum over embedded neighbours, accumulated in
  // ascending neighbour id order, plus the list of unknown neighbours.
  std::vector<double> fixed_sum(n_new * static_cast<std::size_t>(dim), 0.0);
  std::vector<std::uint32_t> fixed_count(n_new, 0);
  std::vector<std::vector<std::uint32_t>> nbrs(n_new);
  for (std::size_t i = 0; i < n_new; ++i) {
    double* fs = fixed_sum.data() + i * static_cast<std::size_t>(dim);
    for (NodeId u : g.neighbours(new_nodes[i])) {
      if (embedded[u]) {
        const auto row = emb.row(u);
        for (int d2 = 0; d2 < dim; ++d2) fs[d2] += row[static_cast<std::size_t>(d2)];
        ++fixed_count[i];
      } else if (local[u] != kAbsent) {
        nbrs[i].push_back(local[u]);
      }
    }
  }

  // Anything without a path to an anchored unknown never converges to a
  // meaningful value; detect those pieces up front by BFS from the anchors.
  std::vector<char> reached(n_new, 0);
  {
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < n_new; ++i) {
      if (fixed_count[i] > 0) {
        reached[i] = 1;
        queue.push_back(static_cast<std::uint32_t>(i));
      }
    }
    while (!queue.empty()) {
      const std::uint32_t i = queue.back();
      queue.pop_back();
      for (std::uint32_t j : nbrs[i]) {
        if (!reached[j]) {
          reached[j] = 1;
          queue.push_back(j);
        }
      }
    }
  }
  std::vector<char> active(n_new, 1);
  for (std::size_t i = 0; i < n_new; ++i) {
    if (!reached[i]) stats.isolated.push_back(new_nodes[i]);
  }
  if (!stats.isolated.empty()) {
    if (!cfg.allow_isolated) {
      throw IsolatedShellError(
          cfg.k0, stats.isolated,
          std::to_string(stats.isolated.size()) +
              " shell node(s) have no path to the embedded set");
    }
    log_warn("%zu isolated shell node(s) assigned the zero vector",
             stats.isolated.size());
    for (std::size_t i = 0; i < n_new; ++i) {
      if (!reached[i]) active[i] = 0;
    }
  }

  std::vector<double> cur(n_new * static_cast<std::size_t>(dim), 0.0);
  std::vector<double> nxt(n_new * static_cast<std::size_t>(dim), 0.0);
  for (std::size_t i = 0; i < n_new; ++i) {
    if (fixed_count[i] > 0) {
      const double inv = 1.0 / fixed_count[i];
      double* c = cur.data() + i * static_cast<std::size_t>(dim);
      const double* fs = fixed_sum.data() + i * static_cast<std::size_t>(dim);
      for (int d2 = 0; d2 < dim; ++d2) c[d2] = fs[d2] * inv;
    }
  }

  const auto sweep_into = [&](const std::vector<double>& from,
                              std::vector<double>& to) {
    // Each unknown only reads `from`, so chunked execution is order free.
    std::vector<double> deltas(static_cast<std::size_t>(std::max(threads, 1)), 0.0);
    std::atomic<std::size_t> chunk_id{0};
    parallel_for(n_new, threads, [&](std::size_t begin, std::size_t end) {
      const std::size_t me = chunk_id.fetch_add(1);
      double local_delta = 0;
      for (std::size_t i = begin; i < end; ++i) {
        double* t = to.data() + i * static_cast<std::size_t>(dim);
        const double* c = from.data() + i * static_cast<std::size_t>(dim);
        if (!active[i]) {
          for (int d2 = 0; d2 < dim; ++d2) t[d2] = 0.0;
          continue;
        }
        const double denom = fixed_count[i] + nbrs[i].size();
        if (denom == 0) {
          for (int d2 = 0; d2 < dim; ++d2) t[d2] = 0.0;
          continue;
        }
        const double inv = 1.0 / denom;
        const double* fs = fixed_sum.data() + i * static_cast<std::size_t>(dim);
        for (int d2 = 0; d2 < dim; ++d2) t[d2] = fs[d2];
        for (std::uint32_t j : nbrs[i]) {
          const double* nj = from.data() + static_cast<std::size_t>(j) * dim;
          for (int d2 = 0; d2 < dim; ++d2) t[d2] += nj[d2];
        }
        for (int d2 = 0; d2 < dim; ++d2) {
          t[d2] *= inv;
          const double diff = std::fabs(t[d2] - c[d2]);
          if (diff > local_delta) local_delta = diff;
        }
      }
      if (me < deltas.size()) deltas[me] = local_delta;
    });
    double delta = 0;
    for (double d2 : deltas) delta = std::max(delta, d2);
    return delta;
  };

  for (int it = 0; it < cfg.max_iterations; ++it) {
    const double delta = sweep_into(cur, nxt);
    cur.swap(nxt);
    stats.iterations = it + 1;
    stats.final_delta = delta;
    if (delta <= cfg.tolerance) break;
  }

  // Residual of the fixed point equation on the final iterate.
  double residual = 0;
  for (std::size_t i = 0; i < n_new; ++i) {
    if (!active[i]) continue;
    const double denom = fixed_count[i] + nbrs[i].size();
    if (denom == 0) continue;
    const double inv = 1.0 / denom;
    const double* c = cur.data() + i * static_cast<std::size_t>(dim);
    const double* fs = fixed_sum.data() + i * static_cast<std::size_t>(dim);
    for (int d2 = 0; d2 < dim; ++d2) {
      double mean = fs[d2];
      for (std::uint32_t j : nbrs[i]) {
        mean += cur[static_cast<std::size_t>(j) * dim + static_cast<std::size_t>(d2)];
      }
      mean *= inv;
      residual = std::max(residual, std::fabs(c[d2] - mean));
    }
  }
  stats.residual = residual;

  for (std::size_t i = 0; i < n_new; ++i) {
    auto row = emb.row(new_nodes[i]);
    const double* c = cur.data() + i * static_cast<std::size_t>(dim);
    for (int d2 = 0; d2 < dim; ++d2) {
      row[static_cast<std::size_t>(d2)] = static_cast<float>(c[d2]);
    }
    emb.set_trained(new_nodes[i], false);
  }
  return stats;
}

std::pair<EmbeddingMatrix, TimingBreakdown> propagate_full(
    const Graph& g, const CoreDecomposition& d, const BaseEmbedder& base,
    const PropagationConfig& cfg, int threads, double decomposition_seconds) {
  if (cfg.k0 < 1 || cfg.k0 > d.degeneracy) {
    throw ConfigError("k0 = " + std::to_string(cfg.k0) +
                      " outside [1, degeneracy = " +
                      std::to_string(d.degeneracy) + "]");
  }
  if (d.core_index.size() != g.num_nodes()) {
    throw Error("propagate_full: decomposition does not match graph");
  }

  TimingBreakdown timing;
  timing.core_decomposition_s = decomposition_seconds;

  Timer embed_timer;
  Subgraph core = k_core_subgraph(g, d, cfg.k0);
  EmbeddingMatrix base_emb = base(core.graph);
  if (base_emb.num_nodes() != core.graph.num_nodes() || base_emb.dim() < 1) {
    throw Error("base embedder returned a matrix of the wrong shape");
  }
  timing.embedding_s = embed_timer.seconds();

  Timer prop_timer;
  const int dim = base_emb.dim();
  EmbeddingMatrix emb(g.num_nodes(), dim);
  std::vector<std::uint8_t> embedded(g.num_nodes(), 0);
  for (std::size_t i = 0; i < core.original_ids.size(); ++i) {
    const NodeId v = core.original_ids[i];
    auto dst = emb.row(v);
    const auto src = base_emb.row(static_cast<NodeId>(i));
    std::copy(src.begin(), src.end(), dst.begin());
    emb.set_trained(v, base_emb.is_trained(static_cast<NodeId>(i)));
    embedded[v] = 1;
  }

  for (int k = cfg.k0 - 1; k >= 1; --k) {
    const auto& shell = d.shell_members[static_cast<std::size_t>(k)];
    if (shell.empty()) continue;
    propagate_step(g, embedded, shell, emb, cfg, threads);
    for (NodeId v : shell) embedded[v] = 1;
  }
  timing.propagation_s = prop_timer.seconds();
  timing.total_s =
      timing.core_decomposition_s + timing.embedding_s + timing.propagation_s;
  return {std::move(emb), timing};
}

}  // namespace corewalk
