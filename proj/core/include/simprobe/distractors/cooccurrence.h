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

#ifndef SIMPROBE_DISTRACTORS_COOCCURRENCE_H_
#define SIMPROBE_DISTRACTORS_COOCCURRENCE_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simprobe/mining/parse.h"

namespace simprobe::distractors {

// Counts of adjective/adverb modifiers per head word, lower-cased.
class CooccurrenceIndex {
 public:
  void Add(std::string_view head, std::string_view modifier, long count = 1);
  // Counts every amod/advmod edge whose dependent is tagged ADJ or ADV.
  void AddParse(const std::vector<std::string> &tokens, const mining::DependencyParse &parse);
  // Streams a CoNLL-U file sentence by sentence.
  void AddConlluFile(const std::filesystem::path &path);

  // Lines of "head<TAB>modifier<TAB>count".
  static CooccurrenceIndex LoadTsv(const std::filesystem::path &path);
  void SaveTsv(const std::filesystem::path &path) const;

  const std::map<std::string, long> *Modifiers(std::string_view head) const;
  size_t head_count() const { return counts_.size(); }

 private:
  std::map<std::string, std::map<std::string, long>> counts_;
};

// Modifiers of `word` with count >= min_frequency, by count descending then
// word ascending, at most `limit`.
std::vector<std::pair<std::string, long>> RankCooccurrence(std::string_view word,
                                                           const CooccurrenceIndex &index,
                                                           int limit = 10,
                                                           long min_frequency = 2);

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_COOCCURRENCE_H_
