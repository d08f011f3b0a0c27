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

#ifndef SIMPROBE_ANALYSIS_ANALYSIS_H_
#define SIMPROBE_ANALYSIS_ANALYSIS_H_

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "simprobe/eval/report.h"
#include "simprobe/lm/masked_lm.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::analysis {

// Pooled topic, property and vehicle vectors of one record.
struct ComponentTriple {
  std::string record_id;
  lm::Vector topic;
  lm::Vector property;
  lm::Vector vehicle;
};

struct DistanceSummary {
  double mean_tp = 0.0;
  double mean_pv = 0.0;
  double mean_tv = 0.0;
  long records = 0;
  long skipped = 0;
};

double L2Distance(const lm::Vector &a, const lm::Vector &b);

// Pools each component over the unmasked sentence at `layer`. nullopt when
// the topic or vehicle span is empty or the sentence does not fit the model.
std::optional<ComponentTriple> ComponentVectors(const mining::SimileRecord &record,
                                                const lm::MaskedLanguageModel &model,
                                                int layer = -1);

// Means over the triples; `records` is the number averaged.
DistanceSummary SummarizeDistances(const std::vector<ComponentTriple> &triples);

// Skipped records are counted in the summary. Raises kPrecondition when no
// record remains.
DistanceSummary ComponentDistances(const std::vector<mining::SimileRecord> &records,
                                   const lm::MaskedLanguageModel &model, int layer = -1);

struct PcaResult {
  lm::Matrix coords;  // rows x 2, centred
  std::array<double, 2> explained_variance_ratio{};
  lm::Matrix components;  // dim x 2, unit columns
};

// Projects the rows of `x` onto its top two principal components. Each
// component's largest-magnitude entry is made positive. Raises
// kInvalidArgument for fewer than 3 rows or a centred rank below 2.
PcaResult Pca(const lm::Matrix &x);

// One row per surface token: the mean of its subtoken states at `layer`.
lm::Matrix TokenStates(const std::vector<std::string> &tokens,
                       const lm::MaskedLanguageModel &model, int layer = -1);

PcaResult PcaCoords(const std::vector<std::string> &tokens, const lm::MaskedLanguageModel &model,
                    int layer = -1);

struct CategoryBreakdown {
  std::map<mining::Category, eval::Tally> by_category;
  long unlabeled = 0;

  // Categories by accuracy, highest first; ties by category order.
  std::vector<std::pair<mining::Category, double>> Ranked() const;
};

// Predictions without a category are counted in `unlabeled`.
CategoryBreakdown BreakdownByCategory(const std::vector<eval::Prediction> &predictions);

inline constexpr char kDistanceCsvHeader[] = "model,records,skipped,mean_tp,mean_pv,mean_tv";
inline constexpr char kPcaCsvHeader[] = "index,token,pc1,pc2";
inline constexpr char kCategoryCsvHeader[] = "category,correct,total,accuracy";

std::string DistanceCsvRow(const std::string &model_name, const DistanceSummary &summary);
// Header, one row per token, then a trailing "explained" row with the
// variance ratios.
std::string PcaToCsv(const std::vector<std::string> &tokens, const PcaResult &pca);
std::string CategoryToCsv(const CategoryBreakdown &breakdown);

}  // namespace simprobe::analysis

#endif  // SIMPROBE_ANALYSIS_ANALYSIS_H_
