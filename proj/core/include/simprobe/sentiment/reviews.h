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

#ifndef SIMPROBE_SENTIMENT_REVIEWS_H_
#define SIMPROBE_SENTIMENT_REVIEWS_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace simprobe::sentiment {

enum class Polarity { kNegative, kPositive };
enum class Split { kTrain, kDev, kTest };

std::string_view PolarityName(Polarity polarity);
std::string_view SplitName(Split split);

struct RawReview {
  std::string text;
  int rating = 0;
};

struct ReviewExample {
  std::string text;
  int rating = 0;
  Polarity label = Polarity::kNegative;
  Split split = Split::kTrain;
};

// 1-2 negative, 4-5 positive, 3 none. Ratings outside 1-5 raise
// kInvalidArgument.
std::optional<Polarity> LabelForRating(int rating);

// Drops 3-star reviews, downsamples the larger class to the size of the
// smaller one and splits each class 6:2:2 into train/dev/test. An empty class
// raises kPrecondition.
std::vector<ReviewExample> PrepareReviews(const std::vector<RawReview> &raw, uint64_t seed);

// CSV, TSV or JSONL with a text column (text | review | content | body) and a
// rating column (rating | stars | score | overall).
std::vector<RawReview> ReadReviews(const std::filesystem::path &path);

}  // namespace simprobe::sentiment

#endif  // SIMPROBE_SENTIMENT_REVIEWS_H_
