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

#include <set>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/random.h"
#include "simprobe/sentiment/head.h"
#include "simprobe/sentiment/reviews.h"
#include "unit/test_util.h"

namespace simprobe::sentiment {
namespace {

using simprobe::testing::TempDir;
using simprobe::testing::TestData;

TEST(LabelForRating, MapsStars) {
  EXPECT_EQ(LabelForRating(1), Polarity::kNegative);
  EXPECT_EQ(LabelForRating(2), Polarity::kNegative);
  EXPECT_FALSE(LabelForRating(3).has_value());
  EXPECT_EQ(LabelForRating(4), Polarity::kPositive);
  EXPECT_EQ(LabelForRating(5), Polarity::kPositive);
  EXPECT_THROW(LabelForRating(0), Error);
  EXPECT_THROW(LabelForRating(6), Error);
}

TEST(PrepareReviews, OnlyNeutralIsAnError) {
  EXPECT_THROW(PrepareReviews({{"meh", 3}, {"fine", 3}}, 0), Error);
}

TEST(PrepareReviews, TenSyntheticReviews) {
  std::vector<RawReview> raw = {{"a", 5}, {"b", 4}, {"c", 5}, {"d", 4}, {"e", 1},
                                {"f", 2}, {"g", 1}, {"h", 2}, {"i", 3}, {"j", 3}};
  auto out = PrepareReviews(raw, 0);
  ASSERT_EQ(out.size(), 8u);
  int pos = 0;
  for (const auto &ex : out) pos += ex.label == Polarity::kPositive;
  EXPECT_EQ(pos, 4);
}

TEST(PrepareReviews, BalancedDisjointDeterministicSplits) {
  Rng rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<RawReview> raw;
    const int n = 10 + static_cast<int>(UniformIndex(rng, 200));
    for (int i = 0; i < n; ++i) raw.push_back({"r" + std::to_string(i), 1 + static_cast<int>(UniformIndex(rng, 5))});
    std::vector<ReviewExample> out;
    try {
      out = PrepareReviews(raw, static_cast<uint64_t>(trial));
    } catch (const Error &) {
      continue;
    }
    int pos = 0, neg = 0;
    std::set<std::string> seen;
    std::map<Split, std::pair<int, int>> per_split;
    for (const auto &ex : out) {
      EXPECT_TRUE(seen.insert(ex.text).second) << "duplicate " << ex.text;
      EXPECT_EQ(LabelForRating(ex.rating), ex.label);
      (ex.label == Polarity::kPositive ? pos : neg)++;
      (ex.label == Polarity::kPositive ? per_split[ex.split].first : per_split[ex.split].second)++;
    }
    EXPECT_EQ(pos, neg);
    for (const auto &[split, counts] : per_split) EXPECT_LE(std::abs(counts.first - counts.second), 1);
    const auto again = PrepareReviews(raw, static_cast<uint64_t>(trial));
    ASSERT_EQ(again.size(), out.size());
    for (size_t i = 0; i < out.size(); ++i) {
      EXPECT_EQ(again[i].text, out[i].text);
      EXPECT_EQ(again[i].split, out[i].split);
    }
  }
}

TEST(PrepareReviews, SixTwoTwoSplit) {
  std::vector<RawReview> raw;
  for (int i = 0; i < 100; ++i) raw.push_back({"p" + std::to_string(i), 5});
  for (int i = 0; i < 120; ++i) raw.push_back({"n" + std::to_string(i), 1});
  std::map<Split, int> counts;
  for (const auto &ex : PrepareReviews(raw, 3)) ++counts[ex.split];
  EXPECT_EQ(counts[Split::kTrain], 120);
  EXPECT_EQ(counts[Split::kDev], 40);
  EXPECT_EQ(counts[Split::kTest], 40);
}

TEST(ReadReviews, CsvAndJsonl) {
  TempDir dir;
  WriteFileAtomic(dir / "r.csv", "id,review,stars\n1,\"great, loved it\",5\n2,awful,1\n");
  auto csv = ReadReviews(dir / "r.csv");
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0].text, "great, loved it");
  EXPECT_EQ(csv[1].rating, 1);
  WriteFileAtomic(dir / "r.jsonl", "{\"text\": \"ok\", \"rating\": 3}\n{\"text\": \"bad\", \"overall\": \"2\"}\n");
  auto jl = ReadReviews(dir / "r.jsonl");
  ASSERT_EQ(jl.size(), 2u);
  EXPECT_EQ(jl[1].rating, 2);
  WriteFileAtomic(dir / "bad.csv", "text,rating\nhello,five\n");
  EXPECT_THROW(ReadReviews(dir / "bad.csv"), Error);
}

LabeledFeatures Blobs(Rng &rng, int n, int dim, double gap, bool shuffle_labels = false) {
  LabeledFeatures f;
  f.x.resize(n, dim);
  for (int i = 0; i < n; ++i) {
    const int y = i % 2;
    for (int d = 0; d < dim; ++d) f.x(i, d) = StandardNormal(rng) + (d == 0 ? (y ? gap : -gap) : 0.0);
    f.y.push_back(y);
  }
  if (shuffle_labels) Shuffle(f.y, rng);
  return f;
}

TEST(TrainHead, SeparableFeaturesArePerfect) {
  Rng rng(2);
  HeadConfig config;
  config.learning_rates = {1e-2, 3e-2};
  config.epochs = 20;
  auto train = Blobs(rng, 200, 6, 6.0), dev = Blobs(rng, 60, 6, 6.0), test = Blobs(rng, 60, 6, 6.0);
  HeadReport r = TrainHead(train, dev, test, config);
  EXPECT_DOUBLE_EQ(r.test_accuracy, 1.0);
  EXPECT_EQ(r.dev_accuracy_by_lr.size(), 2u);
  EXPECT_GE(r.best_epoch, 1);
}

TEST(TrainHead, ShuffledLabelsGiveChance) {
  Rng rng(3);
  HeadConfig config;
  config.learning_rates = {1e-2};
  config.epochs = 10;
  auto train = Blobs(rng, 400, 6, 1.5, true), dev = Blobs(rng, 200, 6, 1.5, true);
  auto test = Blobs(rng, 2000, 6, 1.5);
  EXPECT_NEAR(TrainHead(train, dev, test, config).test_accuracy, 0.5, 0.05);
}

TEST(TrainHead, DefaultLearningRatesAreTheSearchGrid) {
  EXPECT_EQ(HeadConfig().learning_rates, (std::vector<double>{2e-5, 3e-5, 4e-5}));
  EXPECT_EQ(HeadConfig().epochs, 200);
  EXPECT_EQ(HeadConfig().batch_size, 32);
}

TEST(RunSentimentProbe, EncoderStaysFrozen) {
  auto model = lm::TransformerMaskedLM::Load(TestData("fixtures/tiny_bert"));
  std::vector<RawReview> raw;
  const std::vector<std::string> good = {"she is warm and quiet", "the room is green",
                                         "my brother's cat is fast"};
  const std::vector<std::string> bad = {"the snail is slow and lazy", "the room is messy",
                                        "he is cold"};
  for (int i = 0; i < 10; ++i) {
    raw.push_back({good[static_cast<size_t>(i) % 3], 5});
    raw.push_back({bad[static_cast<size_t>(i) % 3], 1});
  }
  HeadConfig config;
  config.learning_rates = {1e-2};
  config.epochs = 5;
  const std::string before = model->ParameterChecksum();
  SentimentReport report = RunSentimentProbe(PrepareReviews(raw, 0), *model, config);
  EXPECT_EQ(report.checksum, before);
  EXPECT_EQ(model->ParameterChecksum(), before);
  EXPECT_GE(report.head.test_accuracy, 0.0);
  EXPECT_TRUE(SentimentReportToJson(report).contains("test_accuracy"));
}

TEST(ExtractFeatures, TruncatesLongReviews) {
  auto model = lm::TransformerMaskedLM::Load(TestData("fixtures/tiny_bert"));
  std::string text;
  for (int i = 0; i < 300; ++i) text += "the cat runs ";
  lm::Matrix f = ExtractFeatures({text, "short"}, *model);
  EXPECT_EQ(f.rows(), 2);
  EXPECT_TRUE(f.allFinite());
}

}  // namespace
}  // namespace simprobe::sentiment
