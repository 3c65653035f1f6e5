#include "corewalk/pca.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "corewalk/error.hpp"
#include "corewalk/rng.hpp"

namespace corewalk {

namespace {

constexpr double kPowerTol = 1e-9;
constexpr int kPowerMaxIter = 1000;

// Largest eigenpair of the symmetric matrix c (d x d) by power iteration.
// Returns the eigenvalue; the unit eigenvector lands in v.
double power_iterate(const std::vector<double>& c, int d, Rng& rng,
                     std::vector<double>& v) {
  v.assign(static_cast<std::size_t>(d), 0.0);
  for (double& x : v) x = rng.next_double() - 0.5;
  double norm = 0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0) {
    v[0] = 1.0;
    norm = 1.0;
  }
  for (double& x : v) x /= norm;

  std::vector<double> w(static_cast<std::size_t>(d));
  for (int it = 0; it < kPowerMaxIter; ++it) {
    for (int i = 0; i < d; ++i) {
      double acc = 0;
      const double* row = c.data() + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < d; ++j) acc += row[j] * v[static_cast<std::size_t>(j)];
      w[static_cast<std::size_t>(i)] = acc;
    }
    double wn = 0;
    for (double x : w) wn += x * x;
    wn = std::sqrt(wn);
    if (wn < 1e-300) {
      // Deflated matrix is numerically zero: any unit vector is fine.
      break;
    }
    // Align signs before measuring the change so eigenvector flips do not
    // masquerade as divergence.
    double dot = 0;
    for (int i = 0; i < d; ++i) dot += w[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
    const double flip = dot < 0 ? -1.0 : 1.0;
    double delta = 0;
    for (int i = 0; i < d; ++i) {
      const double next = flip * w[static_cast<std::size_t>(i)] / wn;
      delta = std::max(delta, std::fabs(next - v[static_cast<std::size_t>(i)]));
      v[static_cast<std::size_t>(i)] = next;
    }
    if (delta < kPowerTol) break;
  }
  // Rayleigh quotient of the final vector.
  double lambda = 0;
  for (int i = 0; i < d; ++i) {
    double acc = 0;
    const double* row = c.data() + static_cast<std::size_t>(i) * d;
    for (int j = 0; j < d; ++j) acc += row[j] * v[static_cast<std::size_t>(j)];
    lambda += acc * v[static_cast<std::size_t>(i)];
  }
  return lambda;
}

}  // namespace

PcaResult pca_project(const EmbeddingMatrix& emb, int components) {
  const std::size_t n = emb.num_nodes();
  const int d = emb.dim();
  if (n < 2) throw ConfigError("pca needs at least 2 rows");
  if (components < 1 || components > d) {
    throw ConfigError("pca component count out of range");
  }

  std::vector<double> mean(static_cast<std::size_t>(d), 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const auto row = emb.row(v);
    for (int i = 0; i < d; ++i) mean[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  // Covariance, (n-1) normalisation.
  std::vector<double> cov(static_cast<std::size_t>(d) * d, 0.0);
  std::vector<double> centered(static_cast<std::size_t>(d));
  for (NodeId v = 0; v < n; ++v) {
    const auto row = emb.row(v);
    for (int i = 0; i < d; ++i) {
      centered[static_cast<std::size_t>(i)] =
          static_cast<double>(row[static_cast<std::size_t>(i)]) - mean[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < d; ++i) {
      const double ci = centered[static_cast<std::size_t>(i)];
      double* out = cov.data() + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < d; ++j) out[j] += ci * centered[static_cast<std::size_t>(j)];
    }
  }
  const double inv = 1.0 / static_cast<double>(n - 1);
  double max_abs = 0;
  for (double& c : cov) {
    c *= inv;
    max_abs = std::max(max_abs, std::fabs(c));
  }
  if (max_abs < 1e-30) throw DataError("pca input has zero variance");

  PcaResult out;
  out.components = components;
  out.dim = d;
  out.loadings.resize(static_cast<std::size_t>(components) * d);
  out.eigenvalues.resize(static_cast<std::size_t>(components));

  Rng rng(derive_seed(0, {salt::kPca}));
  std::vector<double> v;
  for (int c = 0; c < components; ++c) {
    double lambda = power_iterate(cov, d, rng, v);
    if (lambda < 0) lambda = 0;
    // First nonzero loading positive.
    for (int i = 0; i < d; ++i) {
      const double x = v[static_cast<std::size_t>(i)];
      if (std::fabs(x) > 1e-12) {
        if (x < 0) {
          for (double& y : v) y = -y;
        }
        break;
      }
    }
    std::copy(v.begin(), v.end(),
              out.loadings.begin() + static_cast<std::size_t>(c) * d);
    out.eigenvalues[static_cast<std::size_t>(c)] = lambda;
    // Deflate.
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        cov[static_cast<std::size_t>(i) * d + j] -=
            lambda * v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      }
    }
  }

  out.projection.resize(n * static_cast<std::size_t>(components));
  for (NodeId r = 0; r < n; ++r) {
    const auto row = emb.row(r);
    for (int c = 0; c < components; ++c) {
      const double* load = out.loadings.data() + static_cast<std::size_t>(c) * d;
      double acc = 0;
      for (int i = 0; i < d; ++i) {
        acc += (static_cast<double>(row[static_cast<std::size_t>(i)]) -
                mean[static_cast<std::size_t>(i)]) *
               load[i];
      }
      out.projection[static_cast<std::size_t>(r) * components + c] = acc;
    }
  }
  return out;
}

void write_pca_csv(const PcaResult& pca, const EmbeddingMatrix& emb,
                   std::span<const std::string> labels, std::ostream& out) {
  if (pca.components != 2) throw ConfigError("pca csv expects 2 components");
  if (labels.size() != emb.num_nodes()) throw Error("pca csv: label mismatch");
  out << "external_id,pc1,pc2,trained_flag\n";
  for (NodeId v = 0; v < emb.num_nodes(); ++v) {
    out << labels[v] << ',' << pca.projection[static_cast<std::size_t>(v) * 2]
        << ',' << pca.projection[static_cast<std::size_t>(v) * 2 + 1] << ','
        << (emb.is_trained(v) ? 1 : 0) << '\n';
  }
}

}  // namespace corewalk
