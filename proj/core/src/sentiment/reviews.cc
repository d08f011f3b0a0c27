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

#include "simprobe/sentiment/reviews.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "simprobe/common/csv.h"
#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"

namespace simprobe::sentiment {

std::string_view PolarityName(Polarity polarity) {
  return polarity == Polarity::kPositive ? "positive" : "negative";
}

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "unknown";
}

std::optional<Polarity> LabelForRating(int rating) {
  Require(rating >= 1 && rating <= 5, ErrorCode::kInvalidArgument,
          "rating " + std::to_string(rating) + " outside 1-5");
  if (rating == 3) return std::nullopt;
  return rating < 3 ? Polarity::kNegative : Polarity::kPositive;
}

std::vector<ReviewExample> PrepareReviews(const std::vector<RawReview> &raw, uint64_t seed) {
  std::vector<ReviewExample> by_class[2];
  for (const RawReview &r : raw) {
    const std::optional<Polarity> label = LabelForRating(r.rating);
    if (!label) continue;
    by_class[static_cast<int>(*label)].push_back({r.text, r.rating, *label, Split::kTrain});
  }
  Require(!by_class[0].empty() && !by_class[1].empty(), ErrorCode::kPrecondition,
          "reviews need both positive and negative ratings after dropping 3-star ones");
  const size_t n = std::min(by_class[0].size(), by_class[1].size());
  const size_t n_train = n * 6 / 10, n_dev = n * 2 / 10;
  std::vector<ReviewExample> out;
  for (int c = 0; c < 2; ++c) {
    Rng rng(MixSeed(seed, static_cast<uint64_t>(c)));
    std::vector<ReviewExample> &pool = by_class[c];
    Shuffle(pool, rng);
    pool.resize(n);
    for (size_t i = 0; i < n; ++i) {
      pool[i].split = i < n_train ? Split::kTrain : i < n_train + n_dev ? Split::kDev : Split::kTest;
      out.push_back(std::move(pool[i]));
    }
  }
  return out;
}

namespace {

int ParseRating(const std::string &field, const std::string &where) {
  char *end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  Require(end != field.c_str() && *end == '\0' && value == std::floor(value),
          ErrorCode::kDataLoss, where + ": rating \"" + field + "\" is not an integer");
  return static_cast<int>(value);
}

const std::vector<std::string> kTextKeys = {"text", "review", "content", "body"};
const std::vector<std::string> kRatingKeys = {"rating", "stars", "score", "overall"};

}  // namespace

std::vector<RawReview> ReadReviews(const std::filesystem::path &path) {
  std::vector<RawReview> out;
  const std::string ext = ToLower(path.extension().string());
  if (ext == ".jsonl" || ext == ".json") {
    int line = 0;
    for (const nlohmann::json &row : ReadJsonl(path)) {
      ++line;
      const std::string where = path.string() + ":" + std::to_string(line);
      const nlohmann::json *text = nullptr, *rating = nullptr;
      for (const auto &k : kTextKeys) if (!text && row.contains(k)) text = &row[k];
      for (const auto &k : kRatingKeys) if (!rating && row.contains(k)) rating = &row[k];
      Require(text && rating, ErrorCode::kDataLoss, where + ": missing text or rating");
      const std::string r = rating->is_string() ? rating->get<std::string>() : rating->dump();
      out.push_back({text->get<std::string>(), ParseRating(r, where)});
    }
    return out;
  }
  const auto rows = ParseDelimited(ReadFile(path), ext == ".tsv" ? '\t' : ',');
  Require(!rows.empty(), ErrorCode::kDataLoss, path.string() + " is empty");
  int text_col = -1, rating_col = -1;
  for (size_t i = 0; i < rows[0].size(); ++i) {
    const std::string h = ToLower(Trim(rows[0][i]));
    if (text_col < 0 && std::count(kTextKeys.begin(), kTextKeys.end(), h)) text_col = static_cast<int>(i);
    if (rating_col < 0 && std::count(kRatingKeys.begin(), kRatingKeys.end(), h)) rating_col = static_cast<int>(i);
  }
  Require(text_col >= 0 && rating_col >= 0, ErrorCode::kDataLoss,
          path.string() + ": header needs a text and a rating column");
  for (size_t r = 1; r < rows.size(); ++r) {
    const std::string where = path.string() + ":" + std::to_string(r + 1);
    Require(rows[r].size() > static_cast<size_t>(std::max(text_col, rating_col)),
            ErrorCode::kDataLoss, where + ": too few fields");
    out.push_back({rows[r][static_cast<size_t>(text_col)],
                   ParseRating(std::string(Trim(rows[r][static_cast<size_t>(rating_col)])), where)});
  }
  return out;
}

}  // namespace simprobe::sentiment
