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
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"
#include "simprobe/distractors/build_probe.h"
#include "simprobe/distractors/confirm.h"
#include "simprobe/distractors/cooccurrence.h"
#include "simprobe/distractors/generate.h"
#include "simprobe/distractors/kappa.h"
#include "simprobe/distractors/select.h"
#include "simprobe/mining/position.h"
#include "unit/test_util.h"

namespace simprobe::distractors {
namespace {

using simprobe::testing::TempDir;
using simprobe::testing::TestData;

mining::SimileRecord BeeRecord() {
  mining::SimileRecord r;
  r.id = "bee-1";
  r.tokens = {"The", "toddler", "was", "running", "around", "as", "busy", "as", "a", "bee", "."};
  r.topic = {0, 2};
  r.event = {2, 5};
  r.comparators = {{5, 6}, {7, 8}};
  r.property = {6, 7};
  r.vehicle = {8, 10};
  r.category = mining::Category::kQualities;
  r.position = mining::ClassifyPosition(r);
  return r;
}

DistractorCandidate Cand(std::string word, Origin origin = Origin::kVehicleProperty) {
  return {std::move(word), origin, std::nullopt, std::nullopt, HumanLabel::kUnreviewed};
}

std::vector<std::string> Words(const std::vector<DistractorCandidate> &cs) {
  std::vector<std::string> out;
  for (const auto &c : cs) out.push_back(c.word);
  return out;
}

// ---- co-occurrence ---------------------------------------------------------

TEST(RankCooccurrence, ToyIndexSortedAndThresholded) {
  CooccurrenceIndex index;
  index.Add("car", "fast", 5);
  index.Add("car", "big", 3);
  index.Add("car", "old", 2);
  index.Add("car", "red", 1);
  auto ranked = RankCooccurrence("car", index);
  ASSERT_EQ(ranked.size(), 3u);
  EXPECT_EQ(ranked[0], (std::pair<std::string, long>{"fast", 5}));
  EXPECT_EQ(ranked[1], (std::pair<std::string, long>{"big", 3}));
  EXPECT_EQ(ranked[2], (std::pair<std::string, long>{"old", 2}));
}

TEST(RankCooccurrence, CapsAtTen) {
  CooccurrenceIndex index;
  for (int i = 0; i < 12; ++i) index.Add("sky", "mod" + std::to_string(i), 2 + i);
  EXPECT_EQ(RankCooccurrence("sky", index).size(), 10u);
}

TEST(RankCooccurrence, AllSingletonsAndUnknownAreEmpty) {
  CooccurrenceIndex index;
  index.Add("sky", "blue", 1);
  index.Add("sky", "grey", 1);
  EXPECT_TRUE(RankCooccurrence("sky", index).empty());
  EXPECT_TRUE(RankCooccurrence("ocean", index).empty());
}

TEST(RankCooccurrence, TiesBreakLexicographically) {
  CooccurrenceIndex index;
  index.Add("dog", "loyal", 4);
  index.Add("dog", "big", 4);
  index.Add("dog", "happy", 4);
  EXPECT_EQ(RankCooccurrence("dog", index),
            (std::vector<std::pair<std::string, long>>{{"big", 4}, {"happy", 4}, {"loyal", 4}}));
}

TEST(RankCooccurrence, PropertyOverRandomIndexes) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    CooccurrenceIndex index;
    const int mods = static_cast<int>(UniformIndex(rng, 25));
    for (int m = 0; m < mods; ++m) {
      index.Add("w", "m" + std::to_string(UniformIndex(rng, 30)),
                static_cast<long>(1 + UniformIndex(rng, 6)));
    }
    auto ranked = RankCooccurrence("w", index);
    EXPECT_LE(ranked.size(), 10u);
    for (size_t i = 0; i < ranked.size(); ++i) {
      EXPECT_GT(ranked[i].second, 1);
      if (i > 0) {
        const auto &a = ranked[i - 1], &b = ranked[i];
        EXPECT_TRUE(a.second > b.second || (a.second == b.second && a.first < b.first));
      }
    }
    // Nothing left out outranks the last returned entry.
    if (const auto *all = index.Modifiers("w"); all && ranked.size() == 10) {
      for (const auto &[m, c] : *all) {
        const bool returned = std::any_of(ranked.begin(), ranked.end(),
                                          [&](const auto &p) { return p.first == m; });
        if (!returned && c > 1) EXPECT_LE(c, ranked.back().second);
      }
    }
  }
}

TEST(CooccurrenceIndex, TsvRoundTripAndCaseFolding) {
  CooccurrenceIndex index;
  index.Add("Bee", "Yellow", 2);
  index.Add("bee", "yellow", 3);
  index.Add("bee", "small", 2);
  TempDir dir;
  index.SaveTsv(dir / "co.tsv");
  CooccurrenceIndex loaded = CooccurrenceIndex::LoadTsv(dir / "co.tsv");
  EXPECT_EQ(RankCooccurrence("BEE", loaded),
            (std::vector<std::pair<std::string, long>>{{"yellow", 5}, {"small", 2}}));
}

TEST(CooccurrenceIndex, LoadRejectsMalformedLines) {
  TempDir dir;
  WriteFileAtomic(dir / "bad.tsv", "bee\tyellow\tmany\n");
  EXPECT_THROW(CooccurrenceIndex::LoadTsv(dir / "bad.tsv"), Error);
}

TEST(CooccurrenceIndex, CountsAdjectiveAndAdverbModifiersFromConllu) {
  const std::string conllu =
      "1\tthe\tthe\tDET\t_\t_\t3\tdet\t_\t_\n"
      "2\tyellow\tyellow\tADJ\t_\t_\t3\tamod\t_\t_\n"
      "3\tbee\tbee\tNOUN\t_\t_\t4\tnsubj\t_\t_\n"
      "4\tflew\tfly\tVERB\t_\t_\t0\troot\t_\t_\n"
      "5\tquickly\tquickly\tADV\t_\t_\t4\tadvmod\t_\t_\n"
      "6\tthere\tthere\tPRON\t_\t_\t4\tadvmod\t_\t_\n"
      "\n";
  TempDir dir;
  WriteFileAtomic(dir / "c.conllu", conllu + conllu);
  CooccurrenceIndex index;
  index.AddConlluFile(dir / "c.conllu");
  ASSERT_NE(index.Modifiers("bee"), nullptr);
  EXPECT_EQ(index.Modifiers("bee")->at("yellow"), 2);
  EXPECT_EQ(index.Modifiers("flew")->at("quickly"), 2);
  EXPECT_EQ(index.Modifiers("flew")->count("there"), 0u);
}

// ---- candidate generation --------------------------------------------------

TEST(GenerateCandidates, AntonymOfGoldIsHarvested) {
  KnowledgeBase kb;
  kb.AddAntonym("busy", "idle");
  auto out = GenerateCandidates(BeeRecord(), kb, EmptyLookup(), CooccurrenceIndex());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].word, "idle");
  EXPECT_EQ(out[0].origin, Origin::kPropertyAntonym);
}

TEST(GenerateCandidates, NothingFromAnyAdapterGivesEmptyPool) {
  EXPECT_TRUE(GenerateCandidates(BeeRecord(), EmptyLookup(), EmptyLookup(), CooccurrenceIndex())
                  .empty());
}

TEST(GenerateCandidates, MergesToyPoolByPriority) {
  KnowledgeBase kb;
  kb.AddAntonym("busy", "idle");
  kb.AddHasProperty("toddler", "messy");
  kb.AddHasProperty("toddler", "small");
  kb.AddHasProperty("bee", "yellow");
  GeneratedProperties commonsense;
  commonsense.Add("a bee", {"very busy", "Striped"});
  CooccurrenceIndex co;
  co.Add("bee", "yellow", 5);
  co.Add("bee", "busy", 4);
  co.Add("bee", "striped", 3);
  co.Add("bee", "small", 2);
  co.Add("bee", "tiny", 1);
  auto out = GenerateCandidates(BeeRecord(), kb, commonsense, co);
  // Raw pool: idle, messy, small, yellow, striped (commonsense), yellow/striped/small
  // (co-occurrence). Gold, multi-word and singleton entries are dropped.
  ASSERT_EQ(Words(out), (std::vector<std::string>{"idle", "messy", "small", "yellow", "striped"}));
  EXPECT_EQ(out[0].origin, Origin::kPropertyAntonym);
  EXPECT_EQ(out[1].origin, Origin::kTopicProperty);
  EXPECT_EQ(out[2].origin, Origin::kTopicProperty);
  EXPECT_EQ(out[3].origin, Origin::kVehicleProperty);
  EXPECT_EQ(out[4].origin, Origin::kVehicleProperty);
  EXPECT_EQ(out[3].frequency, 5);
  for (const auto &c : out) EXPECT_TRUE(Validate(c, "busy").empty()) << c.word;
}

TEST(GenerateCandidates, CooccurrenceCandidatesCarryFrequency) {
  CooccurrenceIndex co;
  co.Add("running", "fast", 3);
  co.Add("toddler", "cute", 2);
  auto out = GenerateCandidates(BeeRecord(), EmptyLookup(), EmptyLookup(), co);
  ASSERT_EQ(Words(out), (std::vector<std::string>{"cute", "fast"}));
  for (const auto &c : out) {
    EXPECT_EQ(c.origin, Origin::kCorpusCooccurrence);
    ASSERT_TRUE(c.frequency.has_value());
    EXPECT_GT(*c.frequency, 1);
  }
}

TEST(FilterSingleToken, DropsSplitAndUnknownWords) {
  auto model = lm::TransformerMaskedLM::Load(TestData("fixtures/tiny_bert"));
  std::vector<DistractorCandidate> pool = {Cand("messy"), Cand("cats"), Cand("fast"),
                                           Cand("zebra")};
  ASSERT_EQ(model->WordIds("cats").size(), 2u);
  EXPECT_EQ(Words(FilterSingleToken(pool, *model)),
            (std::vector<std::string>{"messy", "fast"}));
}

// ---- selection -------------------------------------------------------------

// Deterministic pseudo-random feature per sentence, independent of any model.
class HashedEncoder : public SentenceFeatureEncoder {
 public:
  explicit HashedEncoder(int dim) : dim_(dim) {}
  lm::Vector Feature(const std::vector<std::string> &tokens, TokenSpan property) const override {
    Rng rng(Fnv1a64(Join(tokens, " ") + "#" + std::to_string(property.begin)));
    lm::Vector v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = StandardNormal(rng);
    return v;
  }

 private:
  int dim_;
};

double OracleCosine(const lm::Vector &a, const lm::Vector &b) {
  double dot = 0, na = 0, nb = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

TEST(SelectDistractors, MatchesBruteForceCosineRanking) {
  HashedEncoder encoder(16);
  Rng rng(11);
  const std::vector<std::string> vocab = {"idle",  "messy",  "yellow", "quiet", "slow", "lazy",
                                          "green", "cold",   "warm",   "blue",  "old",  "fast",
                                          "small", "striped"};
  for (int trial = 0; trial < 50; ++trial) {
    mining::SimileRecord record = BeeRecord();
    record.id = "r" + std::to_string(trial);
    std::vector<std::string> words = vocab;
    Shuffle(words, rng);
    const size_t n = 3 + UniformIndex(rng, 6);  // 3..8
    std::vector<DistractorCandidate> pool;
    for (size_t i = 0; i < n; ++i) pool.push_back(Cand(words[i]));

    // Oracle: score each candidate, then rank by counting who beats it.
    const lm::Vector original = encoder.Feature(record.tokens, record.property);
    std::vector<double> sims;
    for (const auto &c : pool) {
      std::vector<std::string> t = record.tokens;
      t[6] = c.word;
      sims.push_back(OracleCosine(original, encoder.Feature(t, {6, 7})));
    }
    std::vector<std::string> expected(n);
    for (size_t i = 0; i < n; ++i) {
      size_t rank = 0;
      for (size_t j = 0; j < n; ++j) {
        if (sims[j] > sims[i] || (sims[j] == sims[i] && j < i)) ++rank;
      }
      expected[rank] = pool[i].word;
    }
    expected.resize(3);

    auto chosen = SelectDistractors(record, pool, encoder);
    ASSERT_EQ(Words(chosen), expected) << "trial " << trial;
    for (const auto &c : chosen) {
      ASSERT_TRUE(c.similarity.has_value());
      EXPECT_GE(*c.similarity, -1.0 - 1e-12);
      EXPECT_LE(*c.similarity, 1.0 + 1e-12);
    }
    EXPECT_GE(*chosen[0].similarity, *chosen[1].similarity);
    EXPECT_GE(*chosen[1].similarity, *chosen[2].similarity);
  }
}

class ConstantEncoder : public SentenceFeatureEncoder {
 public:
  lm::Vector Feature(const std::vector<std::string> &, TokenSpan) const override {
    return lm::Vector::Ones(4);
  }
};

TEST(SelectDistractors, TiesKeepCandidateOrder) {
  std::vector<DistractorCandidate> pool = {Cand("a"), Cand("b"), Cand("c"), Cand("d")};
  auto chosen = SelectDistractors(BeeRecord(), pool, ConstantEncoder());
  EXPECT_EQ(Words(chosen), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(SelectDistractors, ExactlyThreeAreAllReturned) {
  std::vector<DistractorCandidate> pool = {Cand("idle"), Cand("messy"), Cand("yellow")};
  auto chosen = SelectDistractors(BeeRecord(), pool, HashedEncoder(8));
  const std::vector<std::string> words = Words(chosen);
  std::set<std::string> got(words.begin(), words.end());
  EXPECT_EQ(got, (std::set<std::string>{"idle", "messy", "yellow"}));
}

TEST(SelectDistractors, FewerThanThreeIsAnError) {
  std::vector<DistractorCandidate> pool = {Cand("idle"), Cand("messy")};
  try {
    SelectDistractors(BeeRecord(), pool, HashedEncoder(8));
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kPrecondition);
  }
}

TEST(LmFeatureEncoder, ConcatenatesStartStateAndPropertyState) {
  auto model = lm::TransformerMaskedLM::Load(TestData("fixtures/tiny_bert"));
  LmFeatureEncoder encoder(*model);
  mining::SimileRecord r = BeeRecord();
  lm::Vector f = encoder.Feature(r.tokens, r.property);
  ASSERT_EQ(f.size(), 2 * model->hidden_dim());
  lm::Encoded enc = lm::Encode(r.tokens, *model);
  const int d = model->hidden_dim();
  EXPECT_LT((f.head(d) - enc.hidden.row(0).transpose()).cwiseAbs().maxCoeff(), 1e-12);
  const int sub = enc.encoding.word_to_subtoken[6].begin;
  EXPECT_LT((f.tail(d) - enc.hidden.row(sub).transpose()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SubstituteProperty, ShiftsSpansAfterMultiWordProperty) {
  mining::SimileRecord r = BeeRecord();
  r.tokens = {"he", "is", "as", "very", "busy", "as", "a", "bee"};
  r.topic = {0, 1};
  r.event = {1, 2};
  r.comparators = {{2, 3}, {5, 6}};
  r.property = {3, 5};
  r.vehicle = {6, 8};
  r.position = mining::ClassifyPosition(r);
  mining::SimileRecord s = SubstituteProperty(r, "idle");
  EXPECT_EQ(s.tokens, (std::vector<std::string>{"he", "is", "as", "idle", "as", "a", "bee"}));
  EXPECT_EQ(s.property, (TokenSpan{3, 4}));
  EXPECT_EQ(s.vehicle, (TokenSpan{5, 7}));
  EXPECT_EQ(s.comparators[1], (TokenSpan{4, 5}));
}

// ---- Fleiss' kappa ---------------------------------------------------------

TEST(FleissKappa, PerfectAgreementIsOne) {
  EXPECT_DOUBLE_EQ(FleissKappa({{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}), 1.0);
  EXPECT_DOUBLE_EQ(FleissKappa({{1, 1}, {1, 1}}), 1.0);
}

TEST(FleissKappa, ChanceAgreementIsZero) {
  EXPECT_NEAR(FleissKappa({{0, 1, 0, 1}, {0, 1, 1, 0}}), 0.0, 1e-12);
}

TEST(FleissKappa, HandWorkedThreeRatersSixItems) {
  // Items: (0,0,0) (0,0,1) (1,1,1) (0,1,1) (0,0,0) (1,1,0)
  // P_i = 1, 1/3, 1, 1/3, 1, 1/3 -> P = 2/3
  // p_0 = 10/18, p_1 = 8/18 -> Pe = 41/81
  // kappa = (2/3 - 41/81) / (1 - 41/81) = 13/40
  const std::vector<std::vector<int>> labels = {
      {0, 0, 1, 0, 0, 1},
      {0, 0, 1, 1, 0, 1},
      {0, 1, 1, 1, 0, 0},
  };
  EXPECT_NEAR(FleissKappa(labels), 13.0 / 40.0, 1e-9);
}

TEST(FleissKappa, RejectsDegenerateShapes) {
  EXPECT_THROW(FleissKappa({{0, 1, 0}}), Error);
  EXPECT_THROW(FleissKappa({{0}, {1}}), Error);
  EXPECT_THROW(FleissKappa({{0, 1}, {0}}), Error);
}

TEST(FleissKappa, StaysInRange) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const size_t raters = 2 + UniformIndex(rng, 4), items = 2 + UniformIndex(rng, 10);
    std::vector<std::vector<int>> labels(raters, std::vector<int>(items));
    for (auto &row : labels) {
      for (int &l : row) l = static_cast<int>(UniformIndex(rng, 3));
    }
    const double k = FleissKappa(labels);
    EXPECT_GE(k, -1.0);
    EXPECT_LE(k, 1.0);
  }
}

// ---- probe construction ----------------------------------------------------

std::vector<DistractorCandidate> BeeDistractors() {
  return {Cand("yellow", Origin::kVehicleProperty), Cand("idle", Origin::kPropertyAntonym),
          Cand("messy", Origin::kTopicProperty)};
}

TEST(BuildProbe, BeeSentence) {
  ProbeItem item = BuildProbe(BeeRecord(), BeeDistractors(), 0, "quizzes");
  EXPECT_EQ(Join(item.masked_tokens, " "), "The toddler was running around as [MASK] as a bee .");
  EXPECT_EQ(std::set<std::string>(item.options.begin(), item.options.end()),
            (std::set<std::string>{"busy", "yellow", "idle", "messy"}));
  EXPECT_EQ(item.answer(), "busy");
  EXPECT_TRUE(Validate(item).empty());
  EXPECT_EQ(item.spans.vehicle, (TokenSpan{8, 10}));
  EXPECT_EQ(item.dataset, "quizzes");
}

TEST(BuildProbe, DeterministicForSeed) {
  EXPECT_EQ(BuildProbe(BeeRecord(), BeeDistractors(), 5),
            BuildProbe(BeeRecord(), BeeDistractors(), 5));
}

TEST(BuildProbe, SeedsZeroToTwentyThreeCoverAllOrders) {
  std::set<std::vector<std::string>> orders;
  for (uint64_t seed = 0; seed < 24; ++seed) {
    orders.insert(BuildProbe(BeeRecord(), BeeDistractors(), seed).options);
  }
  EXPECT_EQ(orders.size(), 24u);
}

TEST(NthPermutation, EnumeratesAllPermutationsInOrder) {
  std::array<int, 4> expected = {0, 1, 2, 3};
  for (int i = 0; i < 24; ++i) {
    EXPECT_EQ(NthPermutation(i), expected) << i;
    std::next_permutation(expected.begin(), expected.end());
  }
  EXPECT_THROW(NthPermutation(24), Error);
}

TEST(BuildProbe, RejectsMultiTokenPropertyAndBadDistractors) {
  mining::SimileRecord r = BeeRecord();
  r.property = {5, 7};
  EXPECT_THROW(BuildProbe(r, BeeDistractors(), 0), Error);
  auto ds = BeeDistractors();
  ds[0].word = "Busy";
  EXPECT_THROW(BuildProbe(BeeRecord(), ds, 0), Error);
  ds = BeeDistractors();
  ds.pop_back();
  EXPECT_THROW(BuildProbe(BeeRecord(), ds, 0), Error);
}

TEST(BuildProbe, FuzzedRecordsSatisfyItemInvariants) {
  Rng rng(2024);
  const std::vector<std::string> vocab = {"sun", "moon", "dog", "cat", "tree", "river", "stone",
                                          "wind", "fire", "snow", "glass", "bread"};
  const std::vector<std::string> props = {"bright", "cold", "hard", "soft", "quick", "slow",
                                          "dark",   "warm", "sharp", "calm"};
  const Origin origins[] = {Origin::kPropertyAntonym, Origin::kTopicProperty,
                            Origin::kVehicleProperty, Origin::kEventProperty,
                            Origin::kCorpusCooccurrence};
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 4 + static_cast<int>(UniformIndex(rng, 12));
    mining::SimileRecord r;
    r.id = "fz" + std::to_string(trial);
    for (int i = 0; i < len; ++i) r.tokens.push_back(vocab[UniformIndex(rng, vocab.size())]);
    // topic | comparator | property | comparator | vehicle, rest filler.
    const int p = 1 + static_cast<int>(UniformIndex(rng, static_cast<uint64_t>(len - 3)));
    std::vector<std::string> shuffled = props;
    Shuffle(shuffled, rng);
    r.tokens[static_cast<size_t>(p)] = shuffled[0];
    r.property = {p, p + 1};
    r.topic = {0, 1};
    r.comparators = {{p + 1, p + 2}};
    r.vehicle = {p + 2, len};
    r.position = mining::ClassifyPosition(r);
    std::vector<DistractorCandidate> ds;
    for (int k = 1; k <= 3; ++k) {
      DistractorCandidate c = Cand(shuffled[static_cast<size_t>(k)], origins[UniformIndex(rng, 5)]);
      if (c.origin == Origin::kCorpusCooccurrence) c.frequency = 2 + static_cast<long>(k);
      ds.push_back(c);
    }
    const uint64_t seed = rng();
    ProbeItem item = BuildProbe(r, ds, seed);

    ASSERT_TRUE(Validate(item).empty()) << Validate(item).front();
    EXPECT_EQ(item.mask_index(), p);
    EXPECT_EQ(item.options[static_cast<size_t>(item.answer_index)], shuffled[0]);
    std::multiset<std::string> want = {shuffled[0], shuffled[1], shuffled[2], shuffled[3]};
    EXPECT_EQ(std::multiset<std::string>(item.options.begin(), item.options.end()), want);
    for (int i = 0; i < len; ++i) {
      if (i != p) EXPECT_EQ(item.masked_tokens[static_cast<size_t>(i)], r.tokens[static_cast<size_t>(i)]);
    }
    // Origins follow the distractors in option order.
    size_t o = 0;
    for (const std::string &opt : item.options) {
      if (opt == shuffled[0]) continue;
      auto it = std::find_if(ds.begin(), ds.end(), [&](const auto &d) { return d.word == opt; });
      ASSERT_NE(it, ds.end());
      EXPECT_EQ(item.origins[o++], OriginName(it->origin));
    }
  }
}

// ---- confirmation ----------------------------------------------------------

DraftProbe BeeDraft() {
  DraftProbe d;
  d.record = BeeRecord();
  d.selected = BeeDistractors();
  d.reserve = {Cand("quiet"), Cand("slow")};
  return d;
}

TEST(ConfirmDistractors, UnanimousTrueNegativesLeaveItemUnchanged) {
  ScriptedSession session([](int, const DraftProbe &, const DistractorCandidate &) {
    return Judgment::kTrueNegative;
  });
  auto result = ConfirmDistractors({BeeDraft()}, session);
  ASSERT_EQ(result.confirmed.size(), 1u);
  EXPECT_EQ(Words(result.confirmed[0].selected),
            (std::vector<std::string>{"yellow", "idle", "messy"}));
  for (const auto &c : result.confirmed[0].selected) {
    EXPECT_EQ(c.human_label, HumanLabel::kTrueNegative);
  }
}

TEST(ConfirmDistractors, ThresholdBreachSwapsInNextRanked) {
  ScriptedSession session([](int annotator, const DraftProbe &, const DistractorCandidate &c) {
    if (c.word == "idle" && annotator < 2) return annotator == 0 ? Judgment::kNotNegative
                                                                  : Judgment::kUncertain;
    return Judgment::kTrueNegative;
  });
  TempDir dir;
  ConfirmOptions options;
  options.transcript = dir / "log" / "transcript.jsonl";
  auto result = ConfirmDistractors({BeeDraft()}, session, options);
  ASSERT_EQ(result.confirmed.size(), 1u);
  EXPECT_EQ(Words(result.confirmed[0].selected),
            (std::vector<std::string>{"yellow", "quiet", "messy"}));
  EXPECT_EQ(Words(result.confirmed[0].reserve), (std::vector<std::string>{"slow"}));
  auto rows = ReadJsonl(*options.transcript);
  // Four candidates reviewed, three judgments and one decision each.
  ASSERT_EQ(rows.size(), 16u);
  int replaced = 0;
  for (const auto &row : rows) {
    if (row.value("decision", "") == "replaced") {
      ++replaced;
      EXPECT_EQ(row["candidate"], "idle");
      EXPECT_EQ(row["objections"], 2);
    }
  }
  EXPECT_EQ(replaced, 1);
}

TEST(ConfirmDistractors, SingleObjectionKeepsDistractor) {
  ScriptedSession session([](int annotator, const DraftProbe &, const DistractorCandidate &) {
    return annotator == 2 ? Judgment::kUncertain : Judgment::kTrueNegative;
  });
  auto result = ConfirmDistractors({BeeDraft()}, session);
  ASSERT_EQ(result.confirmed.size(), 1u);
  EXPECT_EQ(result.confirmed[0].reserve.size(), 2u);
}

TEST(ConfirmDistractors, ExhaustedPoolExcludesItemWithReason) {
  ScriptedSession session([](int, const DraftProbe &, const DistractorCandidate &c) {
    return c.word == "yellow" ? Judgment::kTrueNegative : Judgment::kNotNegative;
  });
  DraftProbe other = BeeDraft();
  other.record.id = "bee-2";
  other.selected = {Cand("yellow"), Cand("yellow2"), Cand("yellow3")};
  ScriptedSession lenient([](int, const DraftProbe &, const DistractorCandidate &) {
    return Judgment::kTrueNegative;
  });
  auto result = ConfirmDistractors({BeeDraft()}, session);
  EXPECT_TRUE(result.confirmed.empty());
  ASSERT_EQ(result.excluded.size(), 1u);
  EXPECT_EQ(result.excluded[0].record_id, "bee-1");
  EXPECT_NE(result.excluded[0].reason.find("exhausted"), std::string::npos);
  EXPECT_EQ(ConfirmDistractors({other}, lenient).confirmed.size(), 1u);
}

TEST(ConfirmDistractors, ConfirmedLabelsAreNotReviewedAgain) {
  int calls = 0;
  ScriptedSession session([&](int, const DraftProbe &, const DistractorCandidate &) {
    ++calls;
    return Judgment::kTrueNegative;
  });
  DraftProbe d = BeeDraft();
  d.selected[0].human_label = HumanLabel::kTrueNegative;
  d.selected[1].human_label = HumanLabel::kTrueNegative;
  ConfirmDistractors({d}, session);
  EXPECT_EQ(calls, 3);
}

TEST(StreamSession, ReadsAnswersAndRepromptsOnJunk) {
  std::istringstream in("maybe\ny\n N \n");
  std::ostringstream out;
  StreamSession session(in, out);
  DraftProbe d = BeeDraft();
  EXPECT_EQ(session.Judge(0, d, d.selected[0]), Judgment::kTrueNegative);
  EXPECT_EQ(session.Judge(1, d, d.selected[0]), Judgment::kNotNegative);
  EXPECT_NE(out.str().find("as [MASK] as a bee"), std::string::npos);
  EXPECT_NE(out.str().find("please answer"), std::string::npos);
  try {
    session.Judge(2, d, d.selected[0]);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kAborted);
  }
}

}  // namespace
}  // namespace simprobe::distractors
