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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"
#include "simprobe/eval/ablate.h"
#include "simprobe/eval/baselines.h"
#include "simprobe/eval/quiz.h"
#include "simprobe/eval/report.h"
#include "simprobe/eval/score.h"
#include "unit/stub_model.h"
#include "unit/test_util.h"

namespace simprobe::eval {
namespace {

using distractors::ProbeItem;
using simprobe::testing::StubModel;
using simprobe::testing::TempDir;
using simprobe::testing::TestData;

const std::vector<std::string> kVocab = {"johan", "runs",  "as",   "a",    "deer", ".",
                                         "fast",  "slow",  "big",  "red",  "the",  "lamb",
                                         "innocent", "was", "is",  "are",  "cold", "ice",
                                         "quiet", "old",   "like", "bee",  "busy", "boys"};

ProbeItem DeerItem() {
  ProbeItem item;
  item.record_id = "deer-1";
  item.dataset = "quizzes";
  item.category = mining::Category::kQualities;
  item.masked_tokens = {"Johan", "runs", "as", "[MASK]", "as", "a", "deer", "."};
  item.options = {"fast", "slow", "big", "red"};
  item.answer_index = 0;
  item.origins = {"property_antonym", "vehicle_property", "corpus_cooccurrence"};
  item.spans.topic = {0, 1};
  item.spans.event = {1, 2};
  item.spans.comparators = {{2, 3}, {4, 5}};
  item.spans.vehicle = {5, 7};
  return item;
}

// Logits that rank words by a fixed table; unlisted words get -10.
StubModel TableModel(std::map<std::string, double> table, std::string name = "stub") {
  auto shared = std::make_shared<std::map<std::string, double>>(std::move(table));
  auto words = std::make_shared<std::vector<std::string>>(kVocab);
  return StubModel(kVocab, [shared, words](const std::vector<int> &, int) {
    lm::Vector v = lm::Vector::Constant(static_cast<Eigen::Index>(words->size() + 4), -10.0);
    for (size_t i = 0; i < words->size(); ++i) {
      auto it = shared->find((*words)[i]);
      if (it != shared->end()) v[static_cast<Eigen::Index>(i + 4)] = it->second;
    }
    return v;
  }, std::move(name));
}

// ---- option scoring --------------------------------------------------------

TEST(ScoreOptions, StubArgmax) {
  StubModel model = TableModel({{"fast", 2}, {"slow", 1}, {"big", 0}, {"red", -1}});
  OptionScores s = ScoreOptions(DeerItem(), model);
  EXPECT_EQ(s.chosen, 0);
  ASSERT_EQ(s.scores.size(), 4u);
  EXPECT_GT(s.scores[0], s.scores[1]);
  EXPECT_NEAR(s.scores[0] - s.scores[3], 3.0, 1e-12);
  // Scores are log-probabilities.
  for (double x : s.scores) EXPECT_LT(x, 0.0);
}

TEST(ScoreOptions, TiesGoToLowestIndex) {
  StubModel model = TableModel({{"fast", 1}, {"slow", 1}, {"big", 1}, {"red", 1}});
  EXPECT_EQ(ScoreOptions(DeerItem(), model).chosen, 0);
  ProbeItem item = DeerItem();
  std::rotate(item.options.begin(), item.options.begin() + 1, item.options.end());
  EXPECT_EQ(ScoreOptions(item, model).chosen, 0);
}

TEST(ScoreOptions, ArgmaxInvariantUnderConstantShift) {
  // Small integers keep the shifted comparisons exact.
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> s(4), shifted(4);
    const double c = static_cast<double>(UniformIndex(rng, 2001)) - 1000.0;
    for (size_t i = 0; i < 4; ++i) {
      s[i] = static_cast<double>(UniformIndex(rng, 5));
      shifted[i] = s[i] + c;
    }
    EXPECT_EQ(ArgmaxLowestIndex(s), ArgmaxLowestIndex(shifted));
  }
}

TEST(ScoreOptions, MultiTokenOptionUsesMeanOverJointMasks) {
  // Position-dependent logits: first mask prefers "ice", second "cold".
  StubModel model(kVocab, [](const std::vector<int> &ids, int position) {
    lm::Vector v = lm::Vector::Zero(static_cast<Eigen::Index>(kVocab.size() + 4));
    int first_mask = -1;
    for (size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] == 1) {
        first_mask = static_cast<int>(i);
        break;
      }
    }
    const auto index = [](const std::string &w) {
      return static_cast<Eigen::Index>(std::find(kVocab.begin(), kVocab.end(), w) - kVocab.begin() + 4);
    };
    if (position == first_mask) v[index("ice")] = 3.0;
    else v[index("cold")] = 3.0;
    v[index("fast")] = 1.0;
    return v;
  });
  ProbeItem item = DeerItem();
  item.options = {"fast", "ice-cold", "big", "red"};
  OptionScores s = ScoreOptions(item, model);
  EXPECT_EQ(s.chosen, 1);
  // Independent computation of the mean subtoken log-probability.
  const double n = static_cast<double>(kVocab.size() + 4);
  const double lse = std::log(std::exp(3.0) + std::exp(1.0) + (n - 2.0));
  EXPECT_NEAR(s.scores[1], 3.0 - lse, 1e-12);
}

TEST(ScoreOptions, UnknownOptionIsNamed) {
  StubModel model = TableModel({});
  ProbeItem item = DeerItem();
  item.options[2] = "zyzzyva";
  try {
    ScoreOptions(item, model);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
    EXPECT_NE(std::string(e.what()).find("zyzzyva"), std::string::npos);
  }
}

TEST(ScoreOptions, WorksOnRealEncoder) {
  auto model = lm::TransformerMaskedLM::Load(TestData("fixtures/tiny_bert"));
  ProbeItem item;
  item.record_id = "lamb";
  item.masked_tokens = {"she", "is", "as", "[MASK]", "as", "a", "lamb", "."};
  item.options = {"innocent", "cold", "fast", "messy"};
  item.origins = {"unknown", "unknown", "unknown"};
  OptionScores s = ScoreOptions(item, *model);
  const lm::Vector lp = lm::MaskLogprobs(item.masked_tokens, *model);
  for (size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(s.scores[i], lp[model->WordIds(item.options[i])[0]], 1e-9);
  }
}

// ---- evaluation ------------------------------------------------------------

std::vector<ProbeItem> ManyItems(int n, uint64_t seed) {
  Rng rng(seed);
  std::vector<ProbeItem> items;
  const mining::Category cats[] = {mining::Category::kQualities, mining::Category::kColor};
  for (int i = 0; i < n; ++i) {
    ProbeItem item = DeerItem();
    item.record_id = "item" + std::to_string(i);
    item.answer_index = static_cast<int>(UniformIndex(rng, 4));
    std::swap(item.options[0], item.options[static_cast<size_t>(item.answer_index)]);
    item.dataset = i % 2 ? "quizzes" : "general";
    item.category = cats[i % 2];
    items.push_back(item);
  }
  return items;
}

TEST(Evaluate, OracleStubIsPerfect) {
  StubModel model = TableModel({{"fast", 5}});
  auto report = Evaluate(ManyItems(40, 1), model);
  EXPECT_EQ(report.runs.size(), 3u);
  EXPECT_DOUBLE_EQ(report.mean_accuracy(), 1.0);
  EXPECT_EQ(model.calls, 40);  // one model, predictions reused across seeds
}

TEST(Evaluate, UniformRandomStubIsNearChance) {
  auto rng = std::make_shared<Rng>(99);
  StubModel model(kVocab, [rng](const std::vector<int> &, int) {
    lm::Vector v(static_cast<Eigen::Index>(kVocab.size() + 4));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = UniformReal(*rng);
    return v;
  });
  auto report = Evaluate(ManyItems(1000, 2), model, Setting::kZeroShot, {0});
  EXPECT_NEAR(report.mean_accuracy(), 0.25, 0.03);
}

TEST(Evaluate, AccuracyInvariantUnderItemPermutation) {
  StubModel model = TableModel({{"fast", 2}, {"big", 1}});
  auto items = ManyItems(60, 3);
  const double before = Evaluate(items, model).mean_accuracy();
  Rng rng(4);
  Shuffle(items, rng);
  EXPECT_DOUBLE_EQ(Evaluate(items, model).mean_accuracy(), before);
}

TEST(Evaluate, PerSeedModelsAndReportInvariants) {
  StubModel right = TableModel({{"fast", 5}}, "m");
  StubModel wrong = TableModel({{"red", 5}}, "m");
  auto items = ManyItems(20, 5);
  auto report = Evaluate(
      items,
      [&](uint64_t seed) -> const lm::MaskedLanguageModel & { return seed == 1 ? wrong : right; },
      "m", Setting::kMlmFinetuned, {0, 1, 2});
  auto per_seed = report.per_seed();
  double mean = 0;
  for (const auto &[seed, acc] : per_seed) {
    mean += acc / 3.0;
    const auto &run = report.runs[seed];
    EXPECT_DOUBLE_EQ(acc, static_cast<double>(run.overall().correct) / run.overall().total);
  }
  EXPECT_NEAR(report.mean_accuracy(), mean, 1e-12);
  EXPECT_GT(report.stddev_accuracy(), 0.0);
  EXPECT_EQ(report.per_dataset_accuracy().size(), 2u);
  EXPECT_EQ(report.per_category_accuracy().count("color"), 1u);
}

TEST(Evaluate, EmptyItemsAreRejected) {
  StubModel model = TableModel({});
  EXPECT_THROW(Evaluate({}, model), Error);
}

TEST(Report, JsonRoundTripAndCsv) {
  StubModel model = TableModel({{"fast", 2}, {"red", 3}});
  auto report = Evaluate(ManyItems(12, 6), model);
  ExperimentReport back = ReportFromJson(ReportToJson(report));
  EXPECT_EQ(back.model_name, report.model_name);
  EXPECT_DOUBLE_EQ(back.mean_accuracy(), report.mean_accuracy());
  EXPECT_EQ(back.per_category_accuracy(), report.per_category_accuracy());
  const std::string csv = ReportsToCsv({report});
  EXPECT_EQ(csv.substr(0, kCsvHeader.size()), kCsvHeader);
  EXPECT_NE(csv.find("stub,zero_shot,quizzes,all,0,"), std::string::npos);
  EXPECT_NE(csv.find("stub,zero_shot,all,qualities,2,"), std::string::npos);
}

TEST(Report, EmptyTallyHasNoAccuracy) {
  EXPECT_THROW(Tally{}.accuracy(), Error);
}

// ---- baselines -------------------------------------------------------------

WordVectors Table(std::map<std::string, std::vector<double>> rows) {
  auto shared = std::make_shared<std::map<std::string, std::vector<double>>>(std::move(rows));
  return [shared](std::string_view w) -> std::optional<lm::Vector> {
    auto it = shared->find(ToLower(w));
    if (it == shared->end()) return std::nullopt;
    return Eigen::Map<const lm::Vector>(it->second.data(), static_cast<Eigen::Index>(it->second.size()));
  };
}

double ManualCos(std::vector<double> a, std::vector<double> b) {
  double d = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    d += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return d / std::sqrt(na * nb);
}

TEST(EmbBaseline, OptionEqualToCompositeWins) {
  // deer + runs = (1, 1, 0); "big" equals the composite exactly.
  auto vectors = Table({{"deer", {1, 0, 0}},
                        {"runs", {0, 1, 0}},
                        {"fast", {1, 0, 1}},
                        {"slow", {0, 0, 1}},
                        {"big", {1, 1, 0}},
                        {"red", {-1, 0, 0}}});
  auto s = EmbChoice(DeerItem(), vectors);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->chosen, 2);
  EXPECT_NEAR(s->scores[2], 0.0, 1e-12);
}

TEST(EmbBaseline, MatchesManualCosineRanking) {
  std::map<std::string, std::vector<double>> rows = {{"deer", {0.3, 0.9, -0.2, 0.1}},
                                                     {"runs", {0.5, -0.1, 0.4, 0.2}},
                                                     {"fast", {0.7, 0.6, 0.1, 0.0}},
                                                     {"slow", {-0.4, 0.2, 0.9, 0.3}},
                                                     {"big", {0.1, 0.1, 0.1, 0.9}},
                                                     {"red", {0.9, -0.5, 0.3, 0.2}}};
  const std::vector<double> composite = {0.8, 0.8, 0.2, 0.3};
  std::vector<double> cos;
  for (const char *o : {"fast", "slow", "big", "red"}) cos.push_back(ManualCos(rows[o], composite));
  const int manual = static_cast<int>(std::max_element(cos.begin(), cos.end()) - cos.begin());
  auto s = EmbChoice(DeerItem(), Table(rows));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->chosen, manual);
  for (size_t i = 0; i < 4; ++i) EXPECT_NEAR(s->scores[i], cos[i] - 1.0, 1e-12);
}

TEST(EmbBaseline, EmptyEventUsesVehicleAlone) {
  auto vectors = Table({{"deer", {1, 0}}, {"fast", {1, 0.1}}, {"slow", {0, 1}},
                        {"big", {-1, 0}}, {"red", {0, -1}}});
  ProbeItem item = DeerItem();
  item.spans.event = {};
  auto s = EmbChoice(item, vectors);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->scores[0], ManualCos({1, 0.1}, {1, 0}) - 1.0, 1e-12);
}

TEST(EmbBaseline, UnresolvableVehicleIsSkippedAndCounted) {
  auto vectors = Table({{"runs", {1, 0}}, {"fast", {1, 0}}, {"slow", {0, 1}},
                        {"big", {1, 1}}, {"red", {0, -1}}});
  EXPECT_FALSE(EmbChoice(DeerItem(), vectors));
  auto withdeer = Table({{"deer", {1, 0}}, {"runs", {1, 0}}, {"fast", {1, 0}}, {"slow", {0, 1}},
                         {"big", {1, 1}}, {"red", {0, -1}}});
  ProbeItem other = DeerItem();
  other.masked_tokens[6] = "elk";
  auto report = EvaluateBaseline({DeerItem(), other}, Baseline::kEmb, withdeer);
  EXPECT_EQ(report.skipped, 1);
  EXPECT_EQ(report.runs[0].predictions.size(), 1u);
}

TEST(ConScoreBaseline, BalancedNearOptionDominates) {
  // topic (1,0), vehicle (0,1); "fast" sits between them.
  auto vectors = Table({{"johan", {1, 0}}, {"deer", {0, 1}}, {"fast", {1, 1}},
                        {"slow", {1, 0}}, {"big", {-1, -1}}, {"red", {1, -1}}});
  auto s = ConScoreChoice(DeerItem(), vectors);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->chosen, 0);
}

TEST(ConScoreBaseline, MatchesManualArithmetic) {
  std::map<std::string, std::vector<double>> rows = {{"johan", {1, 0, 0}}, {"deer", {0, 1, 0}},
                                                     {"fast", {1, 2, 0}},  {"slow", {0, 0, 1}},
                                                     {"big", {2, 1, 1}},   {"red", {0, 0, -1}}};
  auto s = ConScoreChoice(DeerItem(), Table(rows));
  ASSERT_TRUE(s);
  for (size_t i = 0; i < 4; ++i) {
    const std::string o = DeerItem().options[i];
    const double dt = 1 - ManualCos(rows[o], rows["johan"]);
    const double dv = 1 - ManualCos(rows[o], rows["deer"]);
    EXPECT_NEAR(s->scores[i], -(dt + dv + std::abs(dt - dv)), 1e-12);
  }
}

TEST(ConScoreBaseline, DistanceZeroToBothScoresZero) {
  auto vectors = Table({{"johan", {1, 0}}, {"deer", {1, 0}}, {"fast", {2, 0}},
                        {"slow", {0, 1}}, {"big", {-1, 0}}, {"red", {1, 1}}});
  auto s = ConScoreChoice(DeerItem(), vectors);
  ASSERT_TRUE(s);
  EXPECT_NEAR(s->scores[0], 0.0, 1e-12);
  EXPECT_EQ(s->chosen, 0);
}

TEST(SpanVector, DropsFunctionWords) {
  auto vectors = Table({{"a", {5, 5}}, {"deer", {1, 0}}});
  auto v = SpanVector({"a", "deer"}, {0, 2}, vectors);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, (lm::Vector(2) << 1, 0).finished());
}

// ---- ablation --------------------------------------------------------------

TEST(Ablate, EventBecomesCopula) {
  ProbeItem out = Ablate(DeerItem(), Component::kEvent);
  EXPECT_EQ(Join(out.masked_tokens, " "), "Johan is as [MASK] as a deer .");
  EXPECT_TRUE(distractors::Validate(out).empty());
}

TEST(Ablate, PluralTopicTakesAre) {
  ProbeItem item = DeerItem();
  item.masked_tokens = {"The", "boys", "were", "running", "as", "[MASK]", "as", "a", "deer", "."};
  item.spans = {{0, 2}, {7, 9}, {2, 4}, {{4, 5}, {6, 7}}};
  ProbeItem out = Ablate(item, Component::kEvent);
  EXPECT_EQ(Join(out.masked_tokens, " "), "The boys are as [MASK] as a deer .");
  EXPECT_EQ(out.spans.vehicle, (TokenSpan{6, 8}));
  EXPECT_EQ(out.spans.comparators[1], (TokenSpan{5, 6}));
}

TEST(Ablate, ComparatorTokensBecomeUnknown) {
  ProbeItem out = Ablate(DeerItem(), Component::kComparator);
  EXPECT_EQ(Join(out.masked_tokens, " "), "Johan runs [UNK] [MASK] [UNK] a deer .");
}

TEST(Ablate, TopicAndVehicleAreCountPreserving) {
  EXPECT_EQ(Join(Ablate(DeerItem(), Component::kVehicle).masked_tokens, " "),
            "Johan runs as [MASK] as [UNK] [UNK] .");
  EXPECT_EQ(Join(Ablate(DeerItem(), Component::kTopic).masked_tokens, " "),
            "[UNK] runs as [MASK] as a deer .");
}

TEST(Ablate, RandomIsDeterministicAndOutsideComponents) {
  ProbeItem item = DeerItem();
  item.masked_tokens = {"Johan", "runs", "as", "[MASK]", "as", "a", "deer", "every", "day", "."};
  item.spans.vehicle = {5, 7};
  std::set<int> hit;
  for (uint64_t seed = 0; seed < 40; ++seed) {
    ProbeItem a = Ablate(item, Component::kRandom, seed);
    EXPECT_EQ(a, Ablate(item, Component::kRandom, seed));
    ASSERT_EQ(a.masked_tokens.size(), item.masked_tokens.size());
    for (size_t i = 0; i < a.masked_tokens.size(); ++i) {
      if (a.masked_tokens[i] != item.masked_tokens[i]) hit.insert(static_cast<int>(i));
    }
  }
  EXPECT_EQ(hit, (std::set<int>{7, 8}));
}

TEST(Ablate, RandomWithoutEligibleTokenFails) {
  EXPECT_THROW(Ablate(DeerItem(), Component::kRandom), Error);
}

TEST(Ablate, PreservesMaskAndLengthProperty) {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    ProbeItem item = DeerItem();
    const int extra = static_cast<int>(UniformIndex(rng, 4));
    for (int k = 0; k < extra; ++k) item.masked_tokens.insert(item.masked_tokens.end() - 1, "old");
    for (Component c : {Component::kTopic, Component::kVehicle, Component::kEvent,
                        Component::kComparator, Component::kRandom}) {
      if (c == Component::kRandom && extra == 0) continue;
      ProbeItem a = Ablate(item, c, rng());
      EXPECT_EQ(std::count(a.masked_tokens.begin(), a.masked_tokens.end(), kMaskToken), 1);
      if (c != Component::kEvent) EXPECT_EQ(a.masked_tokens.size(), item.masked_tokens.size());
      EXPECT_EQ(a.options, item.options);
      EXPECT_EQ(a.record_id, item.record_id);
    }
  }
}

TEST(EvaluateAblation, PairedWithUnablatedItems) {
  StubModel model = TableModel({{"fast", 2}, {"red", 1}});
  auto items = ManyItems(10, 8);
  items[3].spans.event = {};
  auto result = EvaluateAblation(items, Component::kEvent, model);
  EXPECT_EQ(result.dropped, 1);
  EXPECT_EQ(result.kept.size(), 9u);
  EXPECT_EQ(result.ablated.setting_label(), "ablated:event");
  ASSERT_EQ(result.ablated.runs[0].predictions.size(), 9u);
  for (size_t i = 0; i < 9; ++i) {
    EXPECT_EQ(result.ablated.runs[0].predictions[i].record_id, result.kept[i].record_id);
  }
}

// ---- human quiz ------------------------------------------------------------

TEST(HumanQuiz, UnanimousCorrectIsPerfect) {
  ScriptedQuizSession session([](int, const ProbeItem &item) { return item.answer_index; },
                              [](const ProbeItem &, const std::vector<int> &) -> int {
                                ADD_FAILURE();
                                return 0;
                              });
  auto report = HumanQuiz(ManyItems(10, 9), session);
  EXPECT_DOUBLE_EQ(report.mean_accuracy(), 1.0);
  EXPECT_EQ(report.setting, Setting::kHuman);
}

TEST(HumanQuiz, TwoVersusOneTakesMajority) {
  // Annotator 2 always picks a wrong option; the other two are right.
  ScriptedQuizSession session(
      [](int a, const ProbeItem &item) { return a == 2 ? (item.answer_index + 1) % 4 : item.answer_index; },
      [](const ProbeItem &, const std::vector<int> &) -> int {
        ADD_FAILURE();
        return 0;
      });
  EXPECT_DOUBLE_EQ(HumanQuiz(ManyItems(10, 10), session).mean_accuracy(), 1.0);
}

TEST(HumanQuiz, ThreeWayDisagreementIsAdjudicated) {
  int adjudications = 0;
  ScriptedQuizSession session([](int a, const ProbeItem &) { return a; },
                              [&](const ProbeItem &item, const std::vector<int> &votes) {
                                ++adjudications;
                                EXPECT_EQ(votes.size(), 3u);
                                return item.answer_index;
                              });
  TempDir dir;
  QuizOptions options;
  options.transcript = dir / "quiz.jsonl";
  auto report = HumanQuiz(ManyItems(5, 11), session, options);
  EXPECT_EQ(adjudications, 5);
  EXPECT_DOUBLE_EQ(report.mean_accuracy(), 1.0);
  EXPECT_EQ(ReadJsonl(*options.transcript).size(), 20u);
}

TEST(HumanQuiz, AbortKeepsPartialTranscriptAndGivesNoReport) {
  std::istringstream in("a\nb\n");
  std::ostringstream out;
  StreamQuizSession session(in, out);
  TempDir dir;
  QuizOptions options;
  options.transcript = dir / "quiz.jsonl";
  try {
    HumanQuiz(ManyItems(3, 12), session, options);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kAborted);
  }
  EXPECT_EQ(ReadJsonl(*options.transcript).size(), 2u);
  EXPECT_NE(out.str().find("A. "), std::string::npos);
}

TEST(HumanQuiz, NeedsThreeAnnotators) {
  ScriptedQuizSession session([](int, const ProbeItem &) { return 0; },
                              [](const ProbeItem &, const std::vector<int> &) { return 0; });
  QuizOptions options;
  options.annotators = 2;
  EXPECT_THROW(HumanQuiz(ManyItems(3, 1), session, options), Error);
}

TEST(SampleItems, DeterministicWithoutReplacement) {
  auto items = ManyItems(30, 13);
  auto a = SampleItems(items, 10, 4), b = SampleItems(items, 10, 4);
  EXPECT_EQ(a, b);
  std::set<std::string> ids;
  for (const auto &i : a) ids.insert(i.record_id);
  EXPECT_EQ(ids.size(), 10u);
  EXPECT_THROW(SampleItems(items, 31, 0), Error);
}

}  // namespace
}  // namespace simprobe::eval
