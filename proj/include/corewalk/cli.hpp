#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corewalk::cli {

struct RunSpec {
  std::string input_path;
  std::string method = "deepwalk";  // deepwalk | corewalk | kcore-prop
  std::string base = "deepwalk";    // base embedder for kcore-prop
  int k0 = 0;                       // required when method == kcore-prop
  std::vector<int> k0_sweep;        // non-empty switches to sweep mode
  double fraction = 0.1;
  int repeats = 5;
  int walks = 15;
  int walk_length = 30;
  int window = 4;
  int dim = 150;
  int epochs = 5;
  int negatives = 5;
  std::uint64_t seed = 42;
  int threads = 1;
  bool allow_isolated = false;
  bool emit_pca = false;
  bool save_embedding = false;
  std::string out_dir = "out";
};

// Exit codes: 0 ok, 1 configuration, 2 data, 3 runtime (isolated shells
// without --allow-isolated included).
int run(const RunSpec& spec);

// Baseline (spec.base) plus one propagation run per k0 in spec.k0_sweep,
// sharing one report CSV. k0 values above the degeneracy of the first
// repeat's train graph are skipped with a warning.
int sweep(const RunSpec& spec);

}  // namespace corewalk::cli
