#pragma once

#include <vector>

namespace corewalk {

// Binary F1 = 2PR/(P+R), defined as 0 when precision + recall is 0.
// Inputs are 0/1; sizes must match (std::invalid_argument otherwise).
double f1_score(const std::vector<int>& predictions,
                const std::vector<int>& labels);

}  // namespace corewalk
