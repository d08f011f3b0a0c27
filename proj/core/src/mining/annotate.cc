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

#include "simprobe/mining/annotate.h"

#include "simprobe/common/error.h"

namespace simprobe::mining {
namespace {

bool IsRelation(const DependencyParse &parse, int index,
                std::initializer_list<std::string_view> rels) {
  for (std::string_view rel : rels) {
    const std::string &r = parse.deprel[index];
    if (r == rel || (r.size() > rel.size() && r.compare(0, rel.size(), rel) == 0 &&
                     r[rel.size()] == ':')) {
      return true;
    }
  }
  return false;
}

bool Collides(const SimileRecord &record, TokenSpan span) {
  if (span.overlaps(record.property) || span.overlaps(record.vehicle)) return true;
  for (const TokenSpan &c : record.comparators) {
    if (span.overlaps(c)) return true;
  }
  return false;
}

}  // namespace

SimileRecord AnnotateWithParse(const SimileRecord &record,
                               const DependencyParse &parse) {
  Require(parse.size() == static_cast<int>(record.tokens.size()),
          ErrorCode::kInvalidArgument, "parse does not cover the record tokens");
  Require(!record.property.empty(), ErrorCode::kPrecondition,
          "record has no property span");
  SimileRecord out = record;
  const int n = parse.size();

  // Walk from the property up to its governing predicate.
  int node = record.property.end - 1;
  int predicate = -1;
  int event = -1;
  for (int steps = 0; steps <= n && node >= 0; ++steps) {
    int cop = parse.ChildWithRelation(node, "cop");
    if (cop >= 0) {
      predicate = node;
      event = cop;
      break;
    }
    if (parse.upos[node] == Upos::kVerb ||
        (parse.upos[node] == Upos::kAux && parse.head[node] == -1)) {
      predicate = node;
      event = node;
      break;
    }
    if (parse.head[node] < 0) {
      predicate = node;
      break;
    }
    node = parse.head[node];
  }

  // Subject, following control/coordination upward when needed.
  int subject = -1;
  for (int p = predicate, steps = 0; p >= 0 && steps <= n; ++steps) {
    subject = parse.ChildWithRelation(p, "nsubj");
    if (subject < 0) subject = parse.ChildWithRelation(p, "csubj");
    if (subject >= 0) break;
    if (!IsRelation(parse, p, {"xcomp", "conj", "advcl", "ccomp", "acl"})) break;
    p = parse.head[p];
  }

  out.topic = TokenSpan{};
  if (subject >= 0) {
    TokenSpan topic{subject, subject + 1};
    while (topic.begin > 0 && parse.head[topic.begin - 1] == subject &&
           IsRelation(parse, topic.begin - 1, {"compound", "flat"})) {
      --topic.begin;
    }
    while (topic.end < n && parse.head[topic.end] == subject &&
           IsRelation(parse, topic.end, {"compound", "flat"})) {
      ++topic.end;
    }
    if (!Collides(out, topic)) out.topic = topic;
  }

  out.event = TokenSpan{};
  if (event >= 0) {
    TokenSpan span{event, event + 1};
    // Auxiliaries directly before the event belong to it ("was running").
    while (span.begin > 0 && parse.head[span.begin - 1] == predicate &&
           IsRelation(parse, span.begin - 1, {"aux"})) {
      --span.begin;
    }
    if (!Collides(out, span) && !span.overlaps(out.topic)) out.event = span;
  }

  out.needs_review = out.topic.empty();
  return out;
}

SimileRecord AnnotateComponents(const SimileRecord &record,
                                const DependencyParser &parser) {
  if (!record.topic.empty() && !record.event.empty()) return record;
  auto parse = parser.Parse(record.tokens);
  if (!parse) {
    SimileRecord out = record;
    out.needs_review = out.topic.empty();
    return out;
  }
  return AnnotateWithParse(record, *parse);
}

}  // namespace simprobe::mining
