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

#include "simprobe/mining/pos.h"

#include <array>
#include <cctype>
#include <utility>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::mining {
namespace {

constexpr std::array<std::pair<Upos, std::string_view>, 17> kUposNames = {{
    {Upos::kAdj, "ADJ"},     {Upos::kAdp, "ADP"},   {Upos::kAdv, "ADV"},
    {Upos::kAux, "AUX"},     {Upos::kCconj, "CCONJ"}, {Upos::kDet, "DET"},
    {Upos::kIntj, "INTJ"},   {Upos::kNoun, "NOUN"}, {Upos::kNum, "NUM"},
    {Upos::kPart, "PART"},   {Upos::kPron, "PRON"}, {Upos::kPropn, "PROPN"},
    {Upos::kPunct, "PUNCT"}, {Upos::kSconj, "SCONJ"}, {Upos::kSym, "SYM"},
    {Upos::kVerb, "VERB"},   {Upos::kX, "X"},
}};

struct PtbTag {
  std::string_view tag;
  Upos upos;
  bool plural;
};

constexpr PtbTag kPtbTags[] = {
    {"JJ", Upos::kAdj, false},    {"JJR", Upos::kAdj, false},
    {"JJS", Upos::kAdj, false},   {"NN", Upos::kNoun, false},
    {"NNS", Upos::kNoun, true},   {"NNP", Upos::kPropn, false},
    {"NNPS", Upos::kPropn, true}, {"RB", Upos::kAdv, false},
    {"RBR", Upos::kAdv, false},   {"RBS", Upos::kAdv, false},
    {"WRB", Upos::kAdv, false},   {"DT", Upos::kDet, false},
    {"PDT", Upos::kDet, false},   {"WDT", Upos::kDet, false},
    {"PRP$", Upos::kDet, false},  {"WP$", Upos::kDet, false},
    {"IN", Upos::kAdp, false},    {"TO", Upos::kPart, false},
    {"RP", Upos::kPart, false},   {"POS", Upos::kPart, false},
    {"VB", Upos::kVerb, false},   {"VBD", Upos::kVerb, false},
    {"VBG", Upos::kVerb, false},  {"VBN", Upos::kVerb, false},
    {"VBP", Upos::kVerb, false},  {"VBZ", Upos::kVerb, false},
    {"MD", Upos::kAux, false},    {"PRP", Upos::kPron, false},
    {"WP", Upos::kPron, false},   {"EX", Upos::kPron, false},
    {"CC", Upos::kCconj, false},  {"CD", Upos::kNum, false},
    {"UH", Upos::kIntj, false},   {"FW", Upos::kX, false},
    {"LS", Upos::kX, false},      {"SYM", Upos::kSym, false},
    {".", Upos::kPunct, false},   {",", Upos::kPunct, false},
    {":", Upos::kPunct, false},   {"``", Upos::kPunct, false},
    {"''", Upos::kPunct, false},  {"-LRB-", Upos::kPunct, false},
    {"-RRB-", Upos::kPunct, false}, {"HYPH", Upos::kPunct, false},
};

// Closed-class words and frequent open-class words. Entries are lower case.
struct Seed {
  Upos tag;
  bool plural;
  std::string_view words;
};

const Seed kSeeds[] = {
    {Upos::kDet, false,
     "a an the this that these those my your his her its our their some any "
     "every each no another either neither which whose what all both"},
    {Upos::kPron, false,
     "i me he him she it someone somebody everyone everybody anyone anybody "
     "nobody nothing something everything one myself himself herself itself "
     "who whom mine yours hers"},
    {Upos::kPron, true,
     "we us they them you themselves ourselves yourselves ours theirs"},
    {Upos::kAux, false,
     "is was am be been being has had does did will would can could shall "
     "should may might must 's 'm"},
    {Upos::kAux, true, "are were have do 're 've"},
    {Upos::kAdp, false,
     "as like of in on at to from with by for about into onto over under "
     "after before through than upon within without across against along "
     "among behind below beneath beside between beyond during inside near "
     "off outside past since toward towards until"},
    {Upos::kCconj, false, "and or but nor"},
    {Upos::kSconj, false,
     "because when if while although though whether unless whereas once"},
    {Upos::kPart, false, "not n't 'd 'll"},
    {Upos::kAdv, false,
     "very so too well just really quite also always never often still even "
     "around away back here there then now soon much more most almost "
     "already again ever rather once perhaps only yet far long how why where "
     "sometimes usually together up down out"},
    {Upos::kAdj, false,
     "slow fast quick busy white black red blue green yellow brown gray grey "
     "pink cold hot warm cool dry wet soft hard smooth rough sharp dull big "
     "small tiny huge large little tall short high low deep light heavy "
     "strong weak brave bold shy proud wise clever smart dumb silly happy sad "
     "angry mad glad calm quiet loud noisy sweet sour bitter fresh old young "
     "new ancient clean dirty messy neat pure innocent guilty free safe "
     "gentle cruel kind rich poor thin fat skinny bright dark clear busy "
     "stubborn sly cunning fit sick ill sick pale hungry thirsty sleepy "
     "tired lazy idle good bad fine nice pretty ugly lovely friendly jolly "
     "holy lonely lively silly chilly early curly ready steady sturdy "
     "mighty slippery flat round straight stiff tough cute dead alive "
     "nervous excited scared afraid blind deaf dumb cheerful graceful "
     "delicious legal numerous scarce swift regular vain red-hot snug"},
    {Upos::kVerb, false,
     "run runs ran walk walks walked look looks looked feel feels felt seem "
     "seems seemed sound sounds sounded taste tastes tasted smell smells "
     "smelled grow grows grew become becomes became get gets got stand "
     "stands stood sit sits sat move moves moved fly flies flew swim swims "
     "swam work works worked sing sings sang sleep sleeps slept eat eats ate "
     "talk talks talked act acts acted behave behaves behaved turn turns "
     "turned go goes went make makes made keep keeps kept stay stays stayed "
     "remain remains remained appear appears appeared shine shines shone "
     "jump jumps jumped climb climbs climbed fight fights fought laugh "
     "laughs laughed cry cries cried hit hits fall falls fell sound lie lies "
     "lay rise rises rose come comes came play plays played dance dances "
     "danced grin grins grinned smile smiles smiled"},
};

bool IsCapitalized(const std::string &word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

bool AllDigits(const std::string &word) {
  bool any = false;
  for (char c : word) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      any = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return any;
}

}  // namespace

std::string_view UposName(Upos tag) {
  for (const auto &[t, name] : kUposNames) {
    if (t == tag) return name;
  }
  return "X";
}

std::optional<Upos> ParseTag(std::string_view tag, bool *plural) {
  if (plural != nullptr) *plural = false;
  for (const auto &[t, name] : kUposNames) {
    if (name == tag) return t;
  }
  for (const PtbTag &p : kPtbTags) {
    if (p.tag == tag) {
      if (plural != nullptr) *plural = p.plural;
      return p.upos;
    }
  }
  return std::nullopt;
}

std::optional<std::vector<TaggedToken>> PretaggedReader::Tag(
    std::string_view line) const {
  std::vector<std::string> pieces = SplitWhitespace(line);
  if (pieces.empty()) return std::nullopt;
  std::vector<TaggedToken> out;
  out.reserve(pieces.size());
  for (const std::string &piece : pieces) {
    size_t slash = piece.rfind('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == piece.size()) {
      return std::nullopt;
    }
    bool plural = false;
    auto tag = ParseTag(std::string_view(piece).substr(slash + 1), &plural);
    if (!tag) return std::nullopt;
    out.push_back({piece.substr(0, slash), *tag, plural});
  }
  return out;
}

std::vector<TaggedToken> PretaggedReader::TagTokens(
    const std::vector<std::string> &tokens) const {
  std::vector<TaggedToken> out;
  for (const std::string &token : tokens) {
    size_t slash = token.rfind('/');
    bool plural = false;
    std::optional<Upos> tag;
    if (slash != std::string::npos && slash > 0) {
      tag = ParseTag(std::string_view(token).substr(slash + 1), &plural);
    }
    if (tag) {
      out.push_back({token.substr(0, slash), *tag, plural});
    } else {
      out.push_back({token, Upos::kX, false});
    }
  }
  return out;
}

LexiconTagger::LexiconTagger() {
  for (const Seed &seed : kSeeds) {
    for (const std::string &word : SplitWhitespace(seed.words)) {
      lexicon_[word] = {seed.tag, seed.plural};
    }
  }
}

void LexiconTagger::Add(std::string_view word, Upos tag, bool plural) {
  lexicon_[ToLower(word)] = {tag, plural};
}

void LexiconTagger::LoadLexicon(const std::filesystem::path &path) {
  int line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> fields = Split(trimmed, '\t');
    if (fields.size() < 2) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(line_no) +
                                     ": expected word<TAB>TAG");
    }
    bool plural = false;
    auto tag = ParseTag(fields[1], &plural);
    if (!tag) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(line_no) +
                                     ": unknown tag " + fields[1]);
    }
    Add(fields[0], *tag, plural);
  }
}

std::optional<LexiconTagger::Entry> LexiconTagger::Lookup(
    std::string_view word) const {
  auto it = lexicon_.find(ToLower(word));
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

LexiconTagger::Entry LexiconTagger::Guess(const std::string &word,
                                          bool sentence_initial) const {
  if (IsPunctuationToken(word)) return {Upos::kPunct, false};
  if (AllDigits(word)) return {Upos::kNum, false};
  if (!sentence_initial && IsCapitalized(word)) return {Upos::kPropn, false};
  std::string lower = ToLower(word);
  auto ends = [&](std::string_view s) {
    return lower.size() > s.size() + 1 && EndsWith(lower, s);
  };
  if (ends("ly")) return {Upos::kAdv, false};
  for (std::string_view suffix :
       {"ous", "ful", "ive", "able", "ible", "less", "ish", "ic", "est", "ier"}) {
    if (ends(suffix)) return {Upos::kAdj, false};
  }
  if (ends("ing") || ends("ed")) return {Upos::kVerb, false};
  if (ends("s") && !ends("ss") && !ends("us") && !ends("is")) {
    return {Upos::kNoun, true};
  }
  if (sentence_initial && IsCapitalized(word)) return {Upos::kPropn, false};
  return {Upos::kNoun, false};
}

std::vector<TaggedToken> LexiconTagger::TagTokens(
    const std::vector<std::string> &tokens) const {
  const size_t n = tokens.size();
  std::vector<TaggedToken> out(n);
  std::vector<bool> known(n, false);
  for (size_t i = 0; i < n; ++i) {
    out[i].word = tokens[i];
    if (tokens[i] == kMaskToken || tokens[i] == kUnkToken) {
      out[i].tag = Upos::kX;
      known[i] = true;
      continue;
    }
    bool initial = i == 0 || (i > 0 && (tokens[i - 1] == "." || tokens[i - 1] == "!" ||
                                        tokens[i - 1] == "?" || tokens[i - 1] == "\""));
    if (auto entry = Lookup(tokens[i])) {
      out[i].tag = entry->tag;
      out[i].plural = entry->plural;
      known[i] = true;
    } else {
      Entry guess = Guess(tokens[i], initial);
      out[i].tag = guess.tag;
      out[i].plural = guess.plural;
    }
  }
  // Context repairs for unknown words.
  for (size_t i = 0; i < n; ++i) {
    if (known[i]) continue;
    auto is_word = [&](size_t k, std::string_view w) {
      return k < n && EqualsIgnoreCase(tokens[k], w);
    };
    // "as X as": the slot holds an adjective unless morphology says adverb.
    if (i > 0 && is_word(i - 1, "as") && is_word(i + 1, "as") &&
        out[i].tag != Upos::kAdv) {
      out[i].tag = Upos::kAdj;
      out[i].plural = false;
      continue;
    }
    // "<subject> runs as ...": third-person verb after a nominal.
    if (out[i].tag == Upos::kNoun && out[i].plural && i > 0 && i + 1 < n) {
      Upos prev = out[i - 1].tag;
      Upos next = out[i + 1].tag;
      bool after_nominal =
          prev == Upos::kNoun || prev == Upos::kPropn || prev == Upos::kPron;
      bool before_complement = next == Upos::kAdp || next == Upos::kDet ||
                               next == Upos::kAdv || next == Upos::kAdj;
      if (after_nominal && before_complement) {
        out[i].tag = Upos::kVerb;
        out[i].plural = false;
      }
    }
  }
  return out;
}

std::optional<std::vector<TaggedToken>> LexiconTagger::Tag(
    std::string_view line) const {
  if (!IsValidUtf8(line)) return std::nullopt;
  std::vector<std::string> tokens = TokenizeWords(line);
  if (tokens.empty()) return std::nullopt;
  return TagTokens(tokens);
}

}  // namespace simprobe::mining
