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

#include <fstream>

#include <gtest/gtest.h>

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"
#include "simprobe/mining/annotate.h"
#include "simprobe/mining/extract.h"
#include "simprobe/mining/normalize.h"
#include "simprobe/mining/parse.h"
#include "simprobe/mining/pos.h"
#include "simprobe/mining/position.h"
#include "simprobe/mining/simile_record.h"
#include "simprobe/mining/stats.h"
#include "unit/test_util.h"

namespace simprobe::mining {
namespace {

using simprobe::testing::TempDir;

SimileRecord Annotated(const std::string &sentence) {
  static const LexiconTagger tagger;
  static const RuleBasedParser parser(tagger);
  ExtractResult r = ExtractSimiles({sentence}, tagger);
  EXPECT_EQ(r.records.size(), 1u) << sentence;
  return AnnotateComponents(r.records.at(0), parser);
}

TEST(ExtractSimiles, FindsThePropertyAndVehicle) {
  LexiconTagger tagger;
  ExtractResult r = ExtractSimiles({"The old lady walks as slow as a snail"}, tagger);
  ASSERT_EQ(r.records.size(), 1u);
  const SimileRecord &s = r.records[0];
  EXPECT_EQ(s.PropertyText(), "slow");
  EXPECT_EQ(s.VehicleText(), "snail");
  EXPECT_EQ(s.comparators, (std::vector<TokenSpan>{{4, 5}, {6, 7}}));
  EXPECT_TRUE(s.topic.empty());
  EXPECT_TRUE(Validate(s).empty());
}

TEST(ExtractSimiles, EmptyInputGivesNothing) {
  LexiconTagger tagger;
  ExtractResult r = ExtractSimiles({}, tagger);
  EXPECT_TRUE(r.records.empty());
  EXPECT_EQ(r.lines_read, 0);
}

TEST(ExtractSimiles, ToyCorpusMatchesHandRunOfThePattern) {
  // Hand run of `as ADJ as (a|an|the) ... NOUN` with at most 3 tokens between
  // the determiner and the noun:
  //   line 1: "as busy as a bee" -> hit (busy, bee)
  //   line 2: "as well as" is adverbial -> no hit
  //   line 3: no determiner after the second "as" -> no hit
  //   line 4: "as innocent as a newborn lamb" -> hit (innocent, lamb)
  //   line 5: no comparison -> no hit
  LexiconTagger tagger;
  std::vector<std::string> corpus = {
      "The toddler was running around as busy as a bee .",
      "She sings as well as her sister .",
      "Run as fast as possible .",
      "The girl is as innocent as a newborn lamb .",
      "Nothing to see here .",
  };
  ExtractResult r = ExtractSimiles(corpus, tagger);
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.lines_read, 5);
  EXPECT_EQ(r.records[0].PropertyText(), "busy");
  EXPECT_EQ(r.records[0].VehicleText(), "bee");
  EXPECT_EQ(r.records[0].id, "s-1-0");
  EXPECT_EQ(r.records[1].PropertyText(), "innocent");
  EXPECT_EQ(r.records[1].VehicleText(), "lamb");
  EXPECT_EQ(r.records[1].id, "s-4-0");
}

TEST(ExtractSimiles, InterveningCapIsRespected) {
  PretaggedReader reader;
  std::vector<std::string> lines = {
      "as/ADP red/ADJ as/ADP a/DET very/ADV big/ADJ ripe/ADJ tomato/NOUN",
      "as/ADP red/ADJ as/ADP a/DET very/ADV big/ADJ ripe/ADJ juicy/ADJ tomato/NOUN",
  };
  ExtractResult r = ExtractSimiles(lines, reader);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].VehicleText(), "tomato");
}

TEST(ExtractSimiles, SupervisionModeNeedsALeadingNoun) {
  PretaggedReader reader;
  ExtractOptions options;
  options.mode = PatternMode::kSupervision;
  ExtractResult r = ExtractSimiles(
      {"His/PRON hands/NOUN were/AUX as/ADP cold/ADJ as/ADP ice/NOUN ./PUNCT",
       "as/ADP cold/ADJ as/ADP ice/NOUN"},
      reader, options);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].PropertyText(), "cold");
  EXPECT_EQ(r.records[0].VehicleText(), "ice");
}

TEST(ExtractSimiles, UntaggableLinesAreCountedNotFatal) {
  PretaggedReader reader;
  ExtractResult r = ExtractSimiles({"no tags here", "as/ADP busy/ADJ as/ADP a/DET bee/NOUN"}, reader);
  EXPECT_EQ(r.lines_skipped, 1);
  EXPECT_EQ(r.records.size(), 1u);
}

TEST(ExtractSimiles, FuzzedTaggedLinesYieldValidRecords) {
  const std::vector<std::pair<std::string, std::string>> vocab = {
      {"as", "ADP"},    {"a", "DET"},     {"the", "DET"},  {"an", "DET"},   {"busy", "ADJ"},
      {"bee", "NOUN"},  {"ran", "VERB"},  {"is", "AUX"},   {"very", "ADV"}, {"cold", "ADJ"},
      {"ice", "NOUN"},  {"he", "PRON"},   {".", "PUNCT"},  {"well", "ADV"}, {"snail", "NOUN"},
  };
  PretaggedReader reader;
  Rng rng(11);
  int total = 0;
  for (PatternMode mode : {PatternMode::kClosedSimile, PatternMode::kSupervision}) {
    ExtractOptions options;
    options.mode = mode;
    for (int line = 0; line < 2000; ++line) {
      const int n = 1 + static_cast<int>(UniformIndex(rng, 14));
      std::string text;
      std::vector<std::string> words;
      for (int i = 0; i < n; ++i) {
        const auto &[w, t] = vocab[UniformIndex(rng, vocab.size())];
        words.push_back(w + "/" + t);
      }
      if (UniformIndex(rng, 3) != 0) {
        // Plant a pattern instance with 0-4 filler tokens before the noun.
        std::vector<std::string> planted = {"as/ADP", "cold/ADJ", "as/ADP", "a/DET"};
        for (uint64_t k = UniformIndex(rng, 5); k > 0; --k) {
          const auto &[w, t] = vocab[UniformIndex(rng, vocab.size())];
          planted.push_back(w + "/" + t);
        }
        planted.push_back("ice/NOUN");
        words.insert(words.begin() + static_cast<long>(UniformIndex(rng, words.size() + 1)),
                     planted.begin(), planted.end());
      }
      text = Join(words, " ");
      for (const SimileRecord &rec : ExtractSimiles({text}, reader, options).records) {
        ++total;
        EXPECT_TRUE(Validate(rec).empty()) << text;
        EXPECT_EQ(rec.property.size(), 1);
      }
    }
  }
  EXPECT_GT(total, 20);
}

TEST(AnnotateComponents, FindsTopicAndEvent) {
  SimileRecord r = Annotated("Johan runs as fast as a deer");
  EXPECT_EQ(r.TopicText(), "Johan");
  EXPECT_EQ(r.EventText(), "runs");
  EXPECT_FALSE(r.needs_review);
  EXPECT_TRUE(Validate(r).empty());
}

TEST(AnnotateComponents, HandlesCopulaAndModifiedSubjects) {
  SimileRecord lady = Annotated("The old lady walks as slow as a snail");
  EXPECT_EQ(lady.TopicText(), "lady");
  EXPECT_EQ(lady.EventText(), "walks");
  SimileRecord toddler = Annotated("The toddler was running around as busy as a bee .");
  EXPECT_EQ(toddler.TopicText(), "toddler");
  EXPECT_EQ(toddler.EventText(), "was running");
  SimileRecord girl = Annotated("The girl is as innocent as a newborn lamb .");
  EXPECT_EQ(girl.TopicText(), "girl");
  EXPECT_EQ(girl.EventText(), "is");
}

TEST(AnnotateComponents, SubjectlessFragmentIsFlagged) {
  SimileRecord r = Annotated("as busy as a bee");
  EXPECT_TRUE(r.topic.empty());
  EXPECT_TRUE(r.needs_review);
}

TEST(AnnotateComponents, IsIdempotentAndDoesNotMutateInput) {
  LexiconTagger tagger;
  RuleBasedParser parser(tagger);
  SimileRecord once = Annotated("Johan runs as fast as a deer");
  EXPECT_EQ(AnnotateComponents(once, parser), once);
  SimileRecord raw = ExtractSimiles({"Johan runs as fast as a deer"}, tagger).records[0];
  const SimileRecord copy = raw;
  AnnotateComponents(raw, parser);
  EXPECT_EQ(raw, copy);
}

TEST(AnnotateComponents, UsesConlluParses) {
  const std::string conllu =
      "1\tJohan\tJohan\tPROPN\t_\t_\t2\tnsubj\t_\t_\n"
      "2\truns\trun\tVERB\t_\t_\t0\troot\t_\t_\n"
      "3\tas\tas\tADV\t_\t_\t4\tadvmod\t_\t_\n"
      "4\tfast\tfast\tADV\t_\t_\t2\tadvmod\t_\t_\n"
      "5\tas\tas\tADP\t_\t_\t7\tcase\t_\t_\n"
      "6\ta\ta\tDET\t_\t_\t7\tdet\t_\t_\n"
      "7\tdeer\tdeer\tNOUN\t_\t_\t4\tobl\t_\t_\n\n";
  ConlluParseBank bank;
  bank.AddConllu(conllu);
  ASSERT_EQ(bank.sentence_count(), 1);
  LexiconTagger tagger;
  SimileRecord raw = ExtractSimiles({"Johan runs as fast as a deer"}, tagger).records.at(0);
  SimileRecord r = AnnotateComponents(raw, bank);
  EXPECT_EQ(r.TopicText(), "Johan");
  EXPECT_EQ(r.EventText(), "runs");
}

TEST(NormalizeProperty, SingleTokenPassesThrough) {
  SimileRecord r = Annotated("Johan runs as fast as a deer");
  SynonymTable empty;
  NormalizeResult n = NormalizeProperty(r, empty);
  ASSERT_TRUE(n.record.has_value());
  EXPECT_EQ(*n.record, r);
}

SimileRecord MultiTokenProperty() {
  // "The night was as pitch black as coal ."
  SimileRecord r;
  r.id = "m1";
  r.tokens = {"The", "night", "was", "as", "pitch", "black", "as", "coal", "."};
  r.topic = {1, 2};
  r.event = {2, 3};
  r.property = {4, 6};
  r.vehicle = {7, 8};
  r.comparators = {{3, 4}, {6, 7}};
  r.position = ClassifyPosition(r);
  return r;
}

TEST(NormalizeProperty, SubstitutesFromATenEntryTable) {
  SynonymTable table;
  const std::vector<std::pair<std::string, std::string>> entries = {
      {"pitch black", "jet black"}, {"pitch black", "dark"}, {"bone dry", "arid"},
      {"ice cold", "freezing"},     {"brand new", "new"},    {"sky high", "lofty"},
      {"dirt cheap", "cheap"},      {"stone deaf", "deaf"},  {"wide awake", "alert"},
      {"fast asleep", "asleep"},
  };
  for (const auto &[phrase, syn] : entries) table.Add(phrase, syn);
  // The first synonym is two tokens, so the second one is used.
  NormalizeResult n = NormalizeProperty(MultiTokenProperty(), table);
  ASSERT_TRUE(n.record.has_value());
  const SimileRecord &r = *n.record;
  EXPECT_EQ(r.PropertyText(), "dark");
  EXPECT_EQ(r.tokens.size(), 8u);
  EXPECT_EQ(r.VehicleText(), "coal");
  EXPECT_EQ(r.comparators, (std::vector<TokenSpan>{{3, 4}, {5, 6}}));
  EXPECT_TRUE(Validate(r).empty());
  // Normalization is idempotent on its own output.
  EXPECT_EQ(*NormalizeProperty(r, table).record, r);
}

TEST(NormalizeProperty, DropsWithoutSynonym) {
  SynonymTable empty;
  NormalizeResult n = NormalizeProperty(MultiTokenProperty(), empty);
  EXPECT_FALSE(n.record.has_value());
  EXPECT_EQ(n.reason, DropReason::kNoSingleTokenSynonym);
  EXPECT_EQ(DropReasonName(n.reason), "no_single_token_synonym");
}

TEST(SynonymTable, LoadsTsv) {
  TempDir dir;
  std::ofstream(dir / "syn.tsv") << "# comment\npitch black\tdark\tblack\n";
  SynonymTable table(dir / "syn.tsv");
  EXPECT_EQ(table.Synonyms("Pitch Black"), (std::vector<std::string>{"dark", "black"}));
}

TEST(ClassifyPosition, ThirdsRule) {
  EXPECT_EQ(PositionOfToken(0, 9), Position::kStart);
  EXPECT_EQ(PositionOfToken(4, 9), Position::kMiddle);
  EXPECT_EQ(PositionOfToken(8, 9), Position::kEnd);
  // 10 tokens split 4/3/3.
  EXPECT_EQ(PositionOfToken(3, 10), Position::kStart);
  EXPECT_EQ(PositionOfToken(4, 10), Position::kMiddle);
  EXPECT_EQ(PositionOfToken(7, 10), Position::kEnd);
  // 11 tokens split 4/4/3.
  EXPECT_EQ(PositionOfToken(7, 11), Position::kMiddle);
  EXPECT_EQ(PositionOfToken(8, 11), Position::kEnd);
}

TEST(ClassifyPosition, QuizStyleSentencesAreModallyMiddle) {
  std::vector<SimileRecord> records = {
      Annotated("The old lady walks as slow as a snail ."),
      Annotated("The toddler was running around as busy as a bee ."),
      Annotated("The girl is as innocent as a newborn lamb ."),
      Annotated("My little brother was as quiet as a mouse all day ."),
  };
  DatasetStats s = ComputeStats(records);
  EXPECT_GT(s.at_middle, s.at_start);
  EXPECT_GT(s.at_middle, s.at_end);
}

TEST(DatasetStats, SingleRecordCountsOne) {
  DatasetStats s = ComputeStats({Annotated("Johan runs as fast as a deer")});
  EXPECT_EQ(s.sentences, 1);
  EXPECT_EQ(s.unique_topics, 1);
  EXPECT_EQ(s.unique_properties, 1);
  EXPECT_EQ(s.unique_vehicles, 1);
  EXPECT_EQ(s.unique_events, 1);
  EXPECT_EQ(s.unique_topic_vehicle, 1);
  EXPECT_EQ(s.unique_topic_property_vehicle, 1);
  EXPECT_EQ(s.min_length, 7);
  EXPECT_EQ(s.max_length, 7);
}

TEST(DatasetStats, SharedVehicleCountsOncePairsTwice) {
  std::vector<SimileRecord> records = {Annotated("Johan runs as fast as a deer"),
                                       Annotated("Mary jumps as high as a deer")};
  DatasetStats s = ComputeStats(records);
  EXPECT_EQ(s.unique_vehicles, 1);
  EXPECT_EQ(s.unique_topic_vehicle, 2);
  EXPECT_EQ(s.unique_topic_property_vehicle, 2);
  EXPECT_DOUBLE_EQ(s.at_start + s.at_middle + s.at_end, 1.0);
  EXPECT_DOUBLE_EQ(s.avg_length, 7.0);
  EXPECT_NE(StatsToCsv(s).find("unique_vehicles,1"), std::string::npos);
}

TEST(SimileRecord, JsonRoundTrip) {
  SimileRecord r = Annotated("Johan runs as fast as a deer");
  r.category = Category::kQualities;
  nlohmann::json j = r;
  EXPECT_EQ(j["spans"]["property"], nlohmann::json::array({3, 4}));
  EXPECT_EQ(j["position"], "start");  // anchor 2 of 7, split 3/2/2
  EXPECT_EQ(j.get<SimileRecord>(), r);
  r.category.reset();
  nlohmann::json k = r;
  EXPECT_TRUE(k["category"].is_null());
  EXPECT_EQ(k.get<SimileRecord>(), r);
}

TEST(SimileRecord, ValidateReportsViolations) {
  SimileRecord r = MultiTokenProperty();
  EXPECT_TRUE(Validate(r).empty());
  r.vehicle = {5, 8};
  EXPECT_FALSE(Validate(r).empty());
  r = MultiTokenProperty();
  r.comparators.clear();
  EXPECT_FALSE(Validate(r).empty());
  r = MultiTokenProperty();
  r.position = Position::kEnd;
  EXPECT_FALSE(Validate(r).empty());
}

TEST(PosTags, ParsesUniversalAndPennTags) {
  bool plural = false;
  EXPECT_EQ(ParseTag("JJ"), Upos::kAdj);
  EXPECT_EQ(ParseTag("NNS", &plural), Upos::kNoun);
  EXPECT_TRUE(plural);
  EXPECT_EQ(ParseTag("ADV"), Upos::kAdv);
  EXPECT_FALSE(ParseTag("BOGUS").has_value());
}

}  // namespace
}  // namespace simprobe::mining
