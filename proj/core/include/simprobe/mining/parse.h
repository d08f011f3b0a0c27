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

#ifndef SIMPROBE_MINING_PARSE_H_
#define SIMPROBE_MINING_PARSE_H_

#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "simprobe/mining/pos.h"

namespace simprobe::mining {

// Dependency tree over a token sequence. head[i] is the 0-based governor of
// token i, or -1 for the root. Relations follow Universal Dependencies.
struct DependencyParse {
  std::vector<int> head;
  std::vector<std::string> deprel;
  std::vector<Upos> upos;

  int size() const { return static_cast<int>(head.size()); }
  std::vector<int> Children(int index) const;
  // First child of `index` whose relation equals `rel` or starts with
  // `rel` followed by ':' (subtypes), or -1.
  int ChildWithRelation(int index, std::string_view rel) const;
};

class DependencyParser {
 public:
  virtual ~DependencyParser() = default;
  // Returns nullopt when the sentence cannot be parsed.
  virtual std::optional<DependencyParse> Parse(
      const std::vector<std::string> &tokens) const = 0;
};

// Serves parses produced offline (CoNLL-U files). Sentences are matched by
// their exact token sequence.
class ConlluParseBank : public DependencyParser {
 public:
  ConlluParseBank() = default;
  explicit ConlluParseBank(const std::filesystem::path &path);

  // Parses CoNLL-U text; multiword-token and empty-node lines are skipped.
  void AddConllu(std::string_view text);
  int sentence_count() const { return static_cast<int>(parses_.size()); }

  std::optional<DependencyParse> Parse(
      const std::vector<std::string> &tokens) const override;

  // Token sequences in file order, for callers that iterate the bank.
  const std::vector<std::vector<std::string>> &sentences() const {
    return sentences_;
  }

 private:
  std::unordered_map<std::string, DependencyParse> parses_;
  std::vector<std::vector<std::string>> sentences_;
};

// Parses CoNLL-U text into (tokens, parse) pairs.
std::vector<std::pair<std::vector<std::string>, DependencyParse>> ReadConllu(
    std::string_view text);

// Shallow clause-level parser for simile sentences built on a POS tagger.
// Attaches subjects to the nearest following predicate, auxiliaries and
// copulas to their predicate, and comparison phrases to the predicate they
// modify. Enough structure for component annotation, not a general parser.
class RuleBasedParser : public DependencyParser {
 public:
  explicit RuleBasedParser(const PosTagger &tagger) : tagger_(tagger) {}

  std::optional<DependencyParse> Parse(
      const std::vector<std::string> &tokens) const override;

 private:
  const PosTagger &tagger_;
};

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_PARSE_H_
