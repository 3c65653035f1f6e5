#include "corewalk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <span>
#include <sstream>

#include "corewalk/error.hpp"
#include "corewalk/experiment.hpp"
#include "corewalk/kcore.hpp"
#include "corewalk/log.hpp"
#include "corewalk/pca.hpp"
#include "corewalk/report.hpp"
#include "corewalk/split.hpp"
#include "corewalk/util.hpp"

namespace corewalk::cli {

namespace {

ExperimentConfig experiment_config(const RunSpec& spec) {
  ExperimentConfig cfg;
  cfg.walk.walks_per_node = spec.walks;
  cfg.walk.walk_length = spec.walk_length;
  cfg.train.dim = spec.dim;
  cfg.train.window = spec.window;
  cfg.train.epochs = spec.epochs;
  cfg.train.negatives = spec.negatives;
  cfg.prop.allow_isolated = spec.allow_isolated;
  cfg.fraction = spec.fraction;
  cfg.repeats = spec.repeats;
  cfg.master_seed = spec.seed;
  cfg.threads = spec.threads;
  return cfg;
}

void validate(const RunSpec& spec) {
  if (spec.input_path.empty()) throw ConfigError("--input is required");
  if (spec.method != "deepwalk" && spec.method != "corewalk" &&
      spec.method != "kcore-prop") {
    throw ConfigError("unknown method: " + spec.method);
  }
  if (spec.base != "deepwalk" && spec.base != "corewalk") {
    throw ConfigError("unknown base embedder: " + spec.base);
  }
  if (spec.method == "kcore-prop" && spec.k0_sweep.empty() && spec.k0 < 1) {
    throw ConfigError("kcore-prop needs --k0 N (or --k0-sweep)");
  }
  for (int k : spec.k0_sweep) {
    if (k < 1) throw ConfigError("sweep k0 values must be >= 1");
  }
  if (spec.repeats < 1) throw ConfigError("--repeats must be >= 1");
  if (spec.threads < 1) throw ConfigError("--threads must be >= 1");
  if (!(spec.fraction > 0.0 && spec.fraction < 1.0)) {
    throw ConfigError("--fraction must lie in (0, 1)");
  }
}

struct PreparedGraph {
  Graph lcc;
  std::string stats_json;
  std::string shells_csv;
};

PreparedGraph prepare(const RunSpec& spec) {
  EdgeList edges = read_edge_list(spec.input_path);
  BuildStats bstats;
  Graph built = build_graph(edges, &bstats);
  const std::size_t n_components = connected_components(built).size();
  Graph lcc = largest_connected_component(built);
  log_info("graph: %u nodes, %zu edges; lcc: %u nodes, %zu edges",
           built.num_nodes(), built.num_edges(), lcc.num_nodes(),
           lcc.num_edges());

  PreparedGraph out;
  {
    std::ostringstream os;
    write_graph_stats_json(built, bstats, n_components, lcc, os);
    out.stats_json = os.str();
  }
  {
    CoreDecomposition d = decompose(lcc);
    std::ostringstream os;
    write_shell_csv(d, os);
    out.shells_csv = os.str();
    log_info("degeneracy: %d", d.degeneracy);
  }
  out.lcc = std::move(lcc);
  return out;
}

MethodSpec method_spec(const RunSpec& spec, int k0) {
  MethodSpec m;
  m.method = parse_method(spec.method);
  m.base = parse_method(spec.base);
  m.k0 = k0;
  return m;
}

void emit_outputs(const RunSpec& spec, const PreparedGraph& g,
                  std::span<const ExperimentReport> reports,
                  const EmbeddingMatrix* last_emb, const Graph* last_train) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.out_dir);
  auto path = [&](const char* name) {
    return (fs::path(spec.out_dir) / name).string();
  };
  atomic_write_file(path("graph_stats.json"), g.stats_json);
  atomic_write_file(path("shells.csv"), g.shells_csv);
  {
    std::ostringstream os;
    write_report_csv(reports, os);
    atomic_write_file(path("report.csv"), os.str());
  }
  {
    std::ostringstream os;
    write_timing_json(reports.back().timing_mean, os);
    atomic_write_file(path("timing.json"), os.str());
  }
  if (last_emb != nullptr && last_train != nullptr) {
    if (spec.save_embedding) {
      std::ostringstream os;
      save_embedding(*last_emb, last_train->labels(), os);
      atomic_write_file(path("embedding.txt"), os.str());
    }
    if (spec.emit_pca) {
      PcaResult pca = pca_project(*last_emb, 2);
      std::ostringstream os;
      write_pca_csv(pca, *last_emb, last_train->labels(), os);
      atomic_write_file(path("pca.csv"), os.str());
    }
  }
}

void print_summary(const ExperimentReport& rep) {
  std::string speed =
      rep.has_baseline && rep.speedup > 0
          ? "x" + format_number(rep.speedup)
          : "-";
  std::printf("%s: F1 %.2f+-%.2f total %.2fs speedup %s\n", rep.method.c_str(),
              rep.f1_mean, rep.f1_std, rep.timing_mean.total_s, speed.c_str());
}

int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    log_error("%s", e.what());
    return 1;
  } catch (const DataError& e) {
    log_error("%s", e.what());
    return 2;
  } catch (const IsolatedShellError& e) {
    log_error("%s (rerun with --allow-isolated to zero-fill)", e.what());
    return 3;
  } catch (const Error& e) {
    log_error("%s", e.what());
    return 3;
  } catch (const std::exception& e) {
    log_error("%s", e.what());
    return 3;
  }
}

}  // namespace

int run(const RunSpec& spec) {
  return guarded([&] {
    validate(spec);
    PreparedGraph g = prepare(spec);
    ExperimentConfig cfg = experiment_config(spec);
    MethodSpec m = method_spec(spec, spec.k0);

    EmbeddingMatrix last_emb;
    Graph last_train;
    ExperimentReport report =
        run_experiment(g.lcc, m, cfg, nullptr, &last_emb, &last_train);

    std::vector<ExperimentReport> reports{report};
    const bool want_emb = spec.save_embedding || spec.emit_pca;
    emit_outputs(spec, g, reports, want_emb ? &last_emb : nullptr,
                 want_emb ? &last_train : nullptr);
    print_summary(report);
    return 0;
  });
}

int sweep(const RunSpec& spec) {
  return guarded([&] {
    validate(spec);
    if (spec.k0_sweep.empty()) throw ConfigError("--k0-sweep list is empty");
    PreparedGraph g = prepare(spec);
    ExperimentConfig cfg = experiment_config(spec);

    // k0 feasibility is judged on the first repeat's train graph, the one
    // every run of the sweep will see first.
    int split_degeneracy = 0;
    {
      LinkPredictionSplit probe =
          make_split(g.lcc, cfg.fraction, cfg.master_seed);
      split_degeneracy = decompose(probe.train_graph).degeneracy;
      log_info("train graph degeneracy (repeat 0): %d", split_degeneracy);
    }

    MethodSpec base_m;
    base_m.method = parse_method(spec.base);
    std::vector<ExperimentReport> reports;
    reports.push_back(run_experiment(g.lcc, base_m, cfg));
    print_summary(reports.front());

    for (int k0 : spec.k0_sweep) {
      if (k0 > split_degeneracy) {
        log_warn("skipping k0=%d: above train graph degeneracy %d", k0,
                 split_degeneracy);
        continue;
      }
      MethodSpec m = method_spec(spec, k0);
      m.method = Method::kKCoreProp;
      reports.push_back(run_experiment(g.lcc, m, cfg, &reports.front()));
      print_summary(reports.back());
    }

    namespace fs = std::filesystem;
    fs::create_directories(spec.out_dir);
    auto path = [&](const char* name) {
      return (fs::path(spec.out_dir) / name).string();
    };
    atomic_write_file(path("graph_stats.json"), g.stats_json);
    atomic_write_file(path("shells.csv"), g.shells_csv);
    {
      std::ostringstream os;
      write_report_csv(reports, os);
      atomic_write_file(path("report.csv"), os.str());
    }
    {
      std::ostringstream os;
      write_sweep_csv(reports, os);
      atomic_write_file(path("sweep.csv"), os.str());
    }
    return 0;
  });
}

}  // namespace corewalk::cli
