#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "corewalk/embedding.hpp"

namespace corewalk {

struct PcaResult {
  int components = 0;
  int dim = 0;
  std::vector<double> loadings;     // components x dim, row major
  std::vector<double> eigenvalues;  // per component, descending
  std::vector<double> projection;   // num_rows x components, row major
};

// Top principal components of the mean centered rows via power iteration
// with deflation, all in double. Convergence: change below 1e-9 or 1000
// iterations. Sign convention: first nonzero loading of each component is
// positive. Throws ConfigError for fewer than 2 rows, DataError when the
// data has no variance at all.
PcaResult pca_project(const EmbeddingMatrix& emb, int components = 2);

// CSV "external_id,pc1,pc2,trained_flag"; requires components == 2.
void write_pca_csv(const PcaResult& pca, const EmbeddingMatrix& emb,
                   std::span<const std::string> labels, std::ostream& out);

}  // namespace corewalk
