// Copyright 2026 The Simprobe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "simprobe/distractors/kappa.h"

#include <map>

#include "simprobe/common/error.h"

namespace simprobe::distractors {

double FleissKappa(const std::vector<std::vector<int>> &labels) {
  Require(labels.size() >= 2, ErrorCode::kInvalidArgument, "Fleiss' kappa needs at least 2 raters");
  const size_t items = labels.front().size();
  Require(items >= 2, ErrorCode::kInvalidArgument, "Fleiss' kappa needs at least 2 items");
  for (const auto &row : labels) {
    Require(row.size() == items, ErrorCode::kInvalidArgument,
            "every rater must label every item");
  }
  const double n = static_cast<double>(labels.size());
  std::map<int, double> totals;
  double agreement = 0.0;
  for (size_t i = 0; i < items; ++i) {
    std::map<int, double> counts;
    for (const auto &row : labels) counts[row[i]] += 1.0;
    double sum_sq = 0.0;
    for (const auto &[category, c] : counts) {
      sum_sq += c * c;
      totals[category] += c;
    }
    agreement += (sum_sq - n) / (n * (n - 1.0));
  }
  agreement /= static_cast<double>(items);
  double expected = 0.0;
  for (const auto &[category, c] : totals) {
    const double p = c / (n * static_cast<double>(items));
    expected += p * p;
  }
  if (expected >= 1.0) return 1.0;
  return (agreement - expected) / (1.0 - expected);
}

}  // namespace simprobe::distractors
