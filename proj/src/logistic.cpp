#include "corewalk/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corewalk/error.hpp"
#include "corewalk/rng.hpp"

namespace corewalk {

void FeatureMatrix::add_row(std::span<const float> r) {
  if (rows == 0 && cols == 0) cols = static_cast<int>(r.size());
  if (static_cast<int>(r.size()) != cols) {
    throw Error("FeatureMatrix: inconsistent row width");
  }
  data.insert(data.end(), r.begin(), r.end());
  ++rows;
}

namespace {

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(t)) without overflow.
inline double log1pexp(double t) {
  if (t > 30.0) return t;
  return std::log1p(std::exp(t));
}

inline double raw_score(std::span<const double> w, std::span<const float> x) {
  double z = w[w.size() - 1];  // bias
  for (std::size_t i = 0; i < x.size(); ++i) z += w[i] * static_cast<double>(x[i]);
  return z;
}

}  // namespace

double LogisticModel::decision(std::span<const float> x) const {
  return raw_score(weights, x);
}

double LogisticModel::predict_probability(std::span<const float> x) const {
  return sigmoid(raw_score(weights, x));
}

double logistic_loss(std::span<const double> weights, const FeatureMatrix& x,
                     std::span<const int> y, double lambda) {
  double loss = 0;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double z = raw_score(weights, x.row(i));
    // -y log p - (1-y) log(1-p) = log1pexp(z) - y z
    loss += log1pexp(z) - (y[i] != 0 ? z : 0.0);
  }
  loss /= static_cast<double>(x.rows);
  double reg = 0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) reg += weights[i] * weights[i];
  return loss + 0.5 * lambda * reg;
}

std::vector<double> logistic_gradient(std::span<const double> weights,
                                      const FeatureMatrix& x,
                                      std::span<const int> y, double lambda) {
  std::vector<double> grad(weights.size(), 0.0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    const auto xi = x.row(i);
    const double err = sigmoid(raw_score(weights, xi)) - (y[i] != 0 ? 1.0 : 0.0);
    for (std::size_t j = 0; j < xi.size(); ++j) {
      grad[j] += err * static_cast<double>(xi[j]);
    }
    grad[grad.size() - 1] += err;
  }
  const double inv = 1.0 / static_cast<double>(x.rows);
  for (double& g : grad) g *= inv;
  for (std::size_t j = 0; j + 1 < weights.size(); ++j) grad[j] += lambda * weights[j];
  return grad;
}

LogisticModel train_logistic(const FeatureMatrix& x, const std::vector<int>& y,
                             const LogisticConfig& cfg, std::uint64_t seed) {
  if (x.rows == 0 || x.rows != y.size()) {
    throw DataError("logistic training set is empty or inconsistent");
  }
  const bool has_pos = std::any_of(y.begin(), y.end(), [](int v) { return v != 0; });
  const bool has_neg = std::any_of(y.begin(), y.end(), [](int v) { return v == 0; });
  if (!has_pos || !has_neg) {
    throw DataError("logistic training set holds a single class");
  }

  const std::size_t d = static_cast<std::size_t>(x.cols);
  LogisticModel model;
  model.weights.assign(d + 1, 0.0);
  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(derive_seed(seed, {salt::kLogistic}));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t j = rng.next_below(i);
      std::swap(order[i - 1], order[j]);
    }
    const double lr = cfg.lr0 / (1.0 + static_cast<double>(epoch));
    const double shrink = 1.0 - lr * cfg.lambda;
    for (std::size_t idx : order) {
      const auto xi = x.row(idx);
      const double err =
          sigmoid(raw_score(model.weights, xi)) - (y[idx] != 0 ? 1.0 : 0.0);
      for (std::size_t j = 0; j < d; ++j) {
        model.weights[j] =
            model.weights[j] * shrink - lr * err * static_cast<double>(xi[j]);
      }
      model.weights[d] -= lr * err;
    }
  }
  return model;
}

}  // namespace corewalk
