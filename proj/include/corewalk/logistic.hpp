#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace corewalk {

struct FeatureMatrix {
  std::vector<float> data;
  std::size_t rows = 0;
  int cols = 0;

  void add_row(std::span<const float> row);
  std::span<const float> row(std::size_t i) const {
    return {data.data() + i * static_cast<std::size_t>(cols),
            static_cast<std::size_t>(cols)};
  }
};

struct LogisticConfig {
  double lambda = 1e-4;  // L2 on the weights, bias excluded
  int epochs = 500;
  double lr0 = 0.1;  // step size decays as lr0 / (1 + epoch)
};

struct LogisticModel {
  std::vector<double> weights;  // cols entries, then the bias last
  double decision(std::span<const float> x) const;
  double predict_probability(std::span<const float> x) const;
  int predict(std::span<const float> x) const {  // threshold 0.5
    return predict_probability(x) >= 0.5 ? 1 : 0;
  }
};

// Mean cross entropy plus (lambda/2)||w||^2 over the whole set, and its
// gradient; the SGD below follows the per-sample version of the same
// expressions, so these double as its correctness oracle.
double logistic_loss(std::span<const double> weights, const FeatureMatrix& x,
                     std::span<const int> y, double lambda);
std::vector<double> logistic_gradient(std::span<const double> weights,
                                      const FeatureMatrix& x,
                                      std::span<const int> y, double lambda);

// Plain SGD with per-epoch reshuffling. Throws DataError when y holds only
// one class.
LogisticModel train_logistic(const FeatureMatrix& x, const std::vector<int>& y,
                             const LogisticConfig& cfg, std::uint64_t seed);

}  // namespace corewalk
