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

#include "simprobe/mining/parse.h"

#include <cstdlib>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::mining {
namespace {

std::string SentenceKey(const std::vector<std::string> &tokens) {
  return Join(tokens, "\x1f");
}

bool IsNominal(Upos tag) {
  return tag == Upos::kNoun || tag == Upos::kPropn || tag == Upos::kPron;
}

bool IsBoundary(const std::string &token) {
  return token == "." || token == "!" || token == "?" || token == ";" ||
         token == ":";
}

}  // namespace

std::vector<int> DependencyParse::Children(int index) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i) {
    if (head[i] == index) out.push_back(i);
  }
  return out;
}

int DependencyParse::ChildWithRelation(int index, std::string_view rel) const {
  for (int i = 0; i < size(); ++i) {
    if (head[i] != index) continue;
    std::string_view r = deprel[i];
    if (r == rel || (r.size() > rel.size() && StartsWith(r, rel) &&
                     r[rel.size()] == ':')) {
      return i;
    }
  }
  return -1;
}

std::vector<std::pair<std::vector<std::string>, DependencyParse>> ReadConllu(
    std::string_view text) {
  std::vector<std::pair<std::vector<std::string>, DependencyParse>> out;
  std::vector<std::string> tokens;
  DependencyParse parse;
  auto flush = [&] {
    if (!tokens.empty()) {
      for (int &h : parse.head) {
        if (h >= static_cast<int>(tokens.size())) {
          Fail(ErrorCode::kDataLoss, "CoNLL-U head index out of range");
        }
      }
      out.emplace_back(std::move(tokens), std::move(parse));
    }
    tokens.clear();
    parse = DependencyParse{};
  };
  for (const std::string &raw : Split(text, '\n')) {
    std::string_view line = Trim(raw);
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;
    std::vector<std::string> cols = Split(line, '\t');
    if (cols.size() < 8) {
      Fail(ErrorCode::kDataLoss,
           "CoNLL-U line has " + std::to_string(cols.size()) + " columns");
    }
    // Multiword token ranges (1-2) and empty nodes (1.1) are not tokens.
    if (cols[0].find('-') != std::string::npos ||
        cols[0].find('.') != std::string::npos) {
      continue;
    }
    tokens.push_back(cols[1]);
    bool plural = false;
    auto tag = ParseTag(cols[3], &plural);
    if (!tag) tag = ParseTag(cols[4], &plural);
    parse.upos.push_back(tag.value_or(Upos::kX));
    int head = cols[6] == "_" ? 0 : std::stoi(cols[6]);
    parse.head.push_back(head - 1);
    parse.deprel.push_back(cols[7]);
  }
  flush();
  return out;
}

ConlluParseBank::ConlluParseBank(const std::filesystem::path &path) {
  AddConllu(ReadFile(path));
}

void ConlluParseBank::AddConllu(std::string_view text) {
  for (auto &[tokens, parse] : ReadConllu(text)) {
    parses_[SentenceKey(tokens)] = std::move(parse);
    sentences_.push_back(std::move(tokens));
  }
}

std::optional<DependencyParse> ConlluParseBank::Parse(
    const std::vector<std::string> &tokens) const {
  auto it = parses_.find(SentenceKey(tokens));
  if (it == parses_.end()) return std::nullopt;
  return it->second;
}

std::optional<DependencyParse> RuleBasedParser::Parse(
    const std::vector<std::string> &tokens) const {
  if (tokens.empty()) return std::nullopt;
  const std::vector<TaggedToken> tagged = tagger_.TagTokens(tokens);
  const int n = static_cast<int>(tokens.size());
  DependencyParse parse;
  parse.head.assign(n, -2);
  parse.deprel.assign(n, "dep");
  parse.upos.resize(n);
  for (int i = 0; i < n; ++i) parse.upos[i] = tagged[i].tag;
  const auto &tag = parse.upos;

  std::vector<int> predicates;
  int segment_begin = 0;
  for (int end = 0; end <= n; ++end) {
    if (end < n && !IsBoundary(tokens[end])) continue;
    const int b = segment_begin;
    const int e = end;
    segment_begin = end + 1;
    std::vector<bool> is_predicate(n, false);
    std::vector<int> group_start(n, -1);

    // Auxiliaries followed by a main verb; the rest act as copulas.
    for (int i = b; i < e; ++i) {
      if (tag[i] != Upos::kAux) continue;
      int j = i + 1;
      while (j < e && (tag[j] == Upos::kAdv || tag[j] == Upos::kPart)) ++j;
      if (j < e && tag[j] == Upos::kVerb) {
        parse.head[i] = j;
        parse.deprel[i] = "aux";
        continue;
      }
      int k = i + 1;
      while (k < e && (tag[k] == Upos::kAdv || tag[k] == Upos::kDet ||
                       (tag[k] == Upos::kAdp && EqualsIgnoreCase(tokens[k], "as")))) {
        ++k;
      }
      if (k < e && (tag[k] == Upos::kAdj || tag[k] == Upos::kNoun ||
                    tag[k] == Upos::kPropn)) {
        parse.head[i] = k;
        parse.deprel[i] = "cop";
        is_predicate[k] = true;
        group_start[k] = i;
      } else {
        // Auxiliary used as a main verb ("he is here").
        is_predicate[i] = true;
        group_start[i] = i;
      }
    }
    for (int i = b; i < e; ++i) {
      if (tag[i] == Upos::kVerb) {
        is_predicate[i] = true;
        int start = i;
        while (start - 1 >= b && parse.head[start - 1] == i) --start;
        group_start[i] = start;
      }
    }

    std::vector<int> local;
    for (int i = b; i < e; ++i) {
      if (is_predicate[i]) local.push_back(i);
    }

    // Subjects: nearest nominal left of the predicate group, not inside a
    // prepositional phrase, not crossing another predicate.
    for (int p : local) {
      for (int i = group_start[p] - 1; i >= b; --i) {
        if (is_predicate[i] || tag[i] == Upos::kVerb ||
            tag[i] == Upos::kSconj || tag[i] == Upos::kCconj ||
            tokens[i] == ",") {
          break;
        }
        if (!IsNominal(tag[i]) || parse.head[i] != -2) continue;
        int k = i - 1;
        while (k >= b && (tag[k] == Upos::kDet || tag[k] == Upos::kAdj ||
                          tag[k] == Upos::kNum || tag[k] == Upos::kNoun ||
                          tag[k] == Upos::kPropn)) {
          --k;
        }
        if (k >= b && tag[k] == Upos::kAdp) {
          i = k;
          continue;
        }
        parse.head[i] = p;
        parse.deprel[i] = "nsubj";
        // Preceding nouns of the same phrase are compounds.
        for (int c = i - 1; c >= b && (tag[c] == Upos::kNoun || tag[c] == Upos::kPropn) &&
                            parse.head[c] == -2;
             --c) {
          parse.head[c] = i;
          parse.deprel[c] = tag[c] == Upos::kPropn && tag[i] == Upos::kPropn ? "flat"
                                                                             : "compound";
        }
        break;
      }
    }

    // "as ADJ as (DET) ... NOUN" comparisons.
    for (int i = b; i + 2 < e; ++i) {
      if (!EqualsIgnoreCase(tokens[i], "as") ||
          !EqualsIgnoreCase(tokens[i + 2], "as")) {
        continue;
      }
      int prop = i + 1;
      if (tag[prop] != Upos::kAdj && tag[prop] != Upos::kAdv) continue;
      if (!is_predicate[prop]) {
        int governor = -1;
        for (int k = prop - 1; k >= b; --k) {
          if (is_predicate[k]) {
            governor = k;
            break;
          }
        }
        parse.head[prop] = governor;
        parse.deprel[prop] = governor >= 0 ? "advmod" : "root";
      }
      parse.head[i] = prop;
      parse.deprel[i] = "advmod";
      int noun = -1;
      for (int k = i + 3; k < e && k <= i + 7; ++k) {
        if (IsNominal(tag[k])) {
          noun = k;
          if (k + 1 < e && (tag[k + 1] == Upos::kNoun)) continue;
          break;
        }
      }
      if (noun >= 0) {
        parse.head[noun] = prop;
        parse.deprel[noun] = "obl";
        parse.head[i + 2] = noun;
        parse.deprel[i + 2] = "case";
        for (int k = i + 3; k < noun; ++k) {
          if (parse.head[k] != -2) continue;
          parse.head[k] = noun;
          parse.deprel[k] = tag[k] == Upos::kDet    ? "det"
                            : tag[k] == Upos::kNoun ? "compound"
                                                    : "amod";
        }
      }
    }

    for (int p : local) predicates.push_back(p);
    // Remaining tokens attach to the nearest predicate of the segment.
    for (int i = b; i < e; ++i) {
      if (parse.head[i] != -2 || is_predicate[i]) continue;
      int best = -1;
      for (int p : local) {
        if (best < 0 || std::abs(p - i) < std::abs(best - i)) best = p;
      }
      parse.head[i] = best;
      parse.deprel[i] = tag[i] == Upos::kPunct ? "punct" : "dep";
    }
    if (end < n) {
      parse.head[end] = local.empty() ? -2 : local.front();
      parse.deprel[end] = "punct";
    }
  }

  // The first predicate is the root; later ones hang off it.
  int root = predicates.empty() ? -1 : predicates.front();
  for (int p : predicates) {
    if (parse.head[p] != -2) continue;
    if (p == root) {
      parse.head[p] = -1;
      parse.deprel[p] = "root";
    } else {
      parse.head[p] = root;
      parse.deprel[p] = "parataxis";
    }
  }
  for (int i = 0; i < n; ++i) {
    if (parse.head[i] == -2) parse.head[i] = root == i ? -1 : root;
  }
  return parse;
}

}  // namespace simprobe::mining
