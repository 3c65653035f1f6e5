#include "corewalk/metrics.hpp"

#include <stdexcept>

namespace corewalk {

double f1_score(const std::vector<int>& predictions,
                const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw std::invalid_argument("f1_score: size mismatch");
  }
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool p = predictions[i] != 0;
    const bool y = labels[i] != 0;
    if (p && y) ++tp;
    else if (p && !y) ++fp;
    else if (!p && y) ++fn;
  }
  if (tp + fp == 0 || tp + fn == 0) return 0.0;
  const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  const double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace corewalk
