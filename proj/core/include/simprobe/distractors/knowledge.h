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

#ifndef SIMPROBE_DISTRACTORS_KNOWLEDGE_H_
#define SIMPROBE_DISTRACTORS_KNOWLEDGE_H_

#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simprobe::distractors {

// Relation lookups over a lexical or commonsense resource. Words are matched
// case-insensitively; results keep resource order.
class RelationLookup {
 public:
  virtual ~RelationLookup() = default;
  virtual std::vector<std::string> Antonyms(std::string_view word) const = 0;
  virtual std::vector<std::string> HasProperty(std::string_view word) const = 0;
};

// In-memory relation store. Antonymy is stored symmetrically.
class KnowledgeBase : public RelationLookup {
 public:
  KnowledgeBase() = default;

  // Lines of "relation<TAB>head<TAB>tail" with relation Antonym or
  // HasProperty. Lines starting with '#' are comments.
  void LoadTsv(const std::filesystem::path &path);
  // ConceptNet 5 assertion dump (tab separated: uri, relation, start, end,
  // info). Only English Antonym and HasProperty edges are kept.
  void LoadConceptNet(const std::filesystem::path &path);

  void AddAntonym(std::string_view a, std::string_view b);
  void AddHasProperty(std::string_view concept_word, std::string_view property);

  std::vector<std::string> Antonyms(std::string_view word) const override;
  std::vector<std::string> HasProperty(std::string_view word) const override;
  size_t edge_count() const { return edges_; }

 private:
  static void Append(std::unordered_map<std::string, std::vector<std::string>> &map,
                     const std::string &key, const std::string &value);

  std::unordered_map<std::string, std::vector<std::string>> antonyms_;
  std::unordered_map<std::string, std::vector<std::string>> has_property_;
  size_t edges_ = 0;
};

// Precomputed generative-model outputs: lines of "word<TAB>property..."
// giving HasProperty tails. Never returns antonyms.
class GeneratedProperties : public RelationLookup {
 public:
  explicit GeneratedProperties(const std::filesystem::path &path);
  GeneratedProperties() = default;
  void Add(std::string_view word, std::vector<std::string> properties);

  std::vector<std::string> Antonyms(std::string_view) const override { return {}; }
  std::vector<std::string> HasProperty(std::string_view word) const override;

 private:
  std::unordered_map<std::string, std::vector<std::string>> properties_;
};

// Queries a generative commonsense model served over HTTP. Sends
//   POST <path> {"head": word, "relation": "HasProperty", "k": top_k}
// and expects {"tails": [...]} or a bare JSON array. Responses are cached.
class HttpCommonsense : public RelationLookup {
 public:
  // `url` like "http://localhost:8080/generate".
  explicit HttpCommonsense(std::string url, int top_k = 10, int timeout_seconds = 30);

  std::vector<std::string> Antonyms(std::string_view) const override { return {}; }
  std::vector<std::string> HasProperty(std::string_view word) const override;

 private:
  std::string host_;
  std::string path_;
  int top_k_;
  int timeout_seconds_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::vector<std::string>> cache_;
};

// Union of several lookups, in order, without duplicates.
class CombinedLookup : public RelationLookup {
 public:
  explicit CombinedLookup(std::vector<const RelationLookup *> parts) : parts_(std::move(parts)) {}
  std::vector<std::string> Antonyms(std::string_view word) const override;
  std::vector<std::string> HasProperty(std::string_view word) const override;

 private:
  std::vector<const RelationLookup *> parts_;
};

// A lookup that knows nothing.
class EmptyLookup : public RelationLookup {
 public:
  std::vector<std::string> Antonyms(std::string_view) const override { return {}; }
  std::vector<std::string> HasProperty(std::string_view) const override { return {}; }
};

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_KNOWLEDGE_H_
