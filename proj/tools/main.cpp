#include <cstdint>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "corewalk/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "Random-walk node embeddings with k-core scheduling and shell "
      "propagation, evaluated by link prediction"};

  corewalk::cli::RunSpec spec;
  app.add_option("--input", spec.input_path, "edge list file")->required();
  app.add_option("--method", spec.method,
                 "embedding method: deepwalk, corewalk or kcore-prop")
      ->check(CLI::IsMember({"deepwalk", "corewalk", "kcore-prop"}));
  app.add_option("--base", spec.base,
                 "base embedder for kcore-prop: deepwalk or corewalk")
      ->check(CLI::IsMember({"deepwalk", "corewalk"}));
  app.add_option("--k0", spec.k0, "core threshold for kcore-prop");
  app.add_option("--k0-sweep", spec.k0_sweep,
                 "comma separated k0 list; runs the base once plus one "
                 "propagation run per value")
      ->delimiter(',');
  app.add_option("--fraction", spec.fraction, "edge removal fraction");
  app.add_option("--repeats", spec.repeats, "independent repetitions");
  app.add_option("--walks", spec.walks, "walks per node");
  app.add_option("--walk-length", spec.walk_length, "steps per walk");
  app.add_option("--window", spec.window, "skip-gram window");
  app.add_option("--dim", spec.dim, "embedding dimension");
  app.add_option("--epochs", spec.epochs, "training epochs");
  app.add_option("--negatives", spec.negatives, "negative samples per pair");
  app.add_option("--seed", spec.seed, "master random seed");
  app.add_option("--threads", spec.threads,
                 "worker threads (>1 makes training non-deterministic)");
  app.add_flag("--allow-isolated", spec.allow_isolated,
               "zero-fill shell pieces with no path to the embedded core "
               "instead of failing");
  app.add_flag("--pca", spec.emit_pca, "write a 2-component pca.csv");
  app.add_flag("--save-embedding", spec.save_embedding,
               "write embedding.txt for the final repeat");
  app.add_option("--out", spec.out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  if (!spec.k0_sweep.empty()) return corewalk::cli::sweep(spec);
  return corewalk::cli::run(spec);
}
