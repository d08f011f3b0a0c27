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

#ifndef SIMPROBE_MINING_POS_H_
#define SIMPROBE_MINING_POS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simprobe::mining {

// Universal POS tags.
enum class Upos {
  kAdj, kAdp, kAdv, kAux, kCconj, kDet, kIntj, kNoun, kNum,
  kPart, kPron, kPropn, kPunct, kSconj, kSym, kVerb, kX,
};

std::string_view UposName(Upos tag);

// Accepts universal tags ("ADJ") and Penn Treebank tags ("JJ", "NNS").
// Sets `plural` for plural noun tags. Returns nullopt for unknown tags.
std::optional<Upos> ParseTag(std::string_view tag, bool *plural = nullptr);

struct TaggedToken {
  std::string word;
  Upos tag = Upos::kX;
  bool plural = false;
};

// Part-of-speech tagging adapter. Implementations must be stateless after
// construction so one instance can be shared by workers.
class PosTagger {
 public:
  virtual ~PosTagger() = default;

  // Tags one raw line. Returns nullopt when the line cannot be tagged.
  virtual std::optional<std::vector<TaggedToken>> Tag(
      std::string_view line) const = 0;

  // Tags an already tokenized sentence.
  virtual std::vector<TaggedToken> TagTokens(
      const std::vector<std::string> &tokens) const = 0;
};

// Reads lines that were tagged offline, formatted as space separated
// "word/TAG" pairs (the last slash separates word and tag).
class PretaggedReader : public PosTagger {
 public:
  std::optional<std::vector<TaggedToken>> Tag(std::string_view line) const override;
  // Tokens may carry "/TAG" suffixes; untagged tokens become X.
  std::vector<TaggedToken> TagTokens(
      const std::vector<std::string> &tokens) const override;
};

// Lexicon lookup with closed-class word lists and suffix rules for unknown
// open-class words. Lightweight fallback when no external tagger output is
// available.
class LexiconTagger : public PosTagger {
 public:
  LexiconTagger();

  // Lines of "word<TAB>TAG"; later entries override earlier ones.
  void LoadLexicon(const std::filesystem::path &path);
  void Add(std::string_view word, Upos tag, bool plural = false);

  std::optional<std::vector<TaggedToken>> Tag(std::string_view line) const override;
  std::vector<TaggedToken> TagTokens(
      const std::vector<std::string> &tokens) const override;

 private:
  struct Entry {
    Upos tag;
    bool plural;
  };
  std::optional<Entry> Lookup(std::string_view word) const;
  Entry Guess(const std::string &word, bool sentence_initial) const;

  std::unordered_map<std::string, Entry> lexicon_;
};

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_POS_H_
