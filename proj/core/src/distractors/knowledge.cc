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

#include "simprobe/distractors/knowledge.h"

#include <algorithm>
#include <fstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {
namespace {

std::string Key(std::string_view word) {
  std::string key = ToLower(Trim(word));
  std::replace(key.begin(), key.end(), '_', ' ');
  return key;
}

// "/c/en/busy/a" -> "busy"; empty for non-English concepts.
std::string ConceptNetTerm(std::string_view uri) {
  if (!StartsWith(uri, "/c/en/")) return "";
  std::string_view rest = uri.substr(6);
  rest = rest.substr(0, rest.find('/'));
  std::string term(rest);
  std::replace(term.begin(), term.end(), '_', ' ');
  return term;
}

std::vector<std::string> Lookup(const std::unordered_map<std::string, std::vector<std::string>> &map,
                                std::string_view word) {
  auto it = map.find(Key(word));
  return it == map.end() ? std::vector<std::string>{} : it->second;
}

}  // namespace

void KnowledgeBase::Append(std::unordered_map<std::string, std::vector<std::string>> &map,
                           const std::string &key, const std::string &value) {
  auto &values = map[key];
  for (const std::string &v : values) {
    if (EqualsIgnoreCase(v, value)) return;
  }
  values.push_back(value);
}

void KnowledgeBase::AddAntonym(std::string_view a, std::string_view b) {
  const std::string ka = Key(a), kb = Key(b);
  if (ka.empty() || kb.empty() || ka == kb) return;
  Append(antonyms_, ka, kb);
  Append(antonyms_, kb, ka);
  ++edges_;
}

void KnowledgeBase::AddHasProperty(std::string_view concept_word, std::string_view property) {
  const std::string kc = Key(concept_word), kp = Key(property);
  if (kc.empty() || kp.empty()) return;
  Append(has_property_, kc, kp);
  ++edges_;
}

void KnowledgeBase::LoadTsv(const std::filesystem::path &path) {
  int line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> f = Split(trimmed, '\t');
    Require(f.size() == 3, ErrorCode::kDataLoss,
            path.string() + ":" + std::to_string(line_no) + ": expected 3 tab-separated fields");
    const std::string rel = ToLower(f[0]);
    if (rel == "antonym") {
      AddAntonym(f[1], f[2]);
    } else if (rel == "hasproperty") {
      AddHasProperty(f[1], f[2]);
    } else {
      Fail(ErrorCode::kDataLoss,
           path.string() + ":" + std::to_string(line_no) + ": unknown relation " + f[0]);
    }
  }
}

void KnowledgeBase::LoadConceptNet(const std::filesystem::path &path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kNotFound, "cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> f = Split(line, '\t');
    if (f.size() < 4) continue;
    const bool antonym = f[1] == "/r/Antonym";
    const bool has_property = f[1] == "/r/HasProperty";
    if (!antonym && !has_property) continue;
    const std::string start = ConceptNetTerm(f[2]);
    const std::string end = ConceptNetTerm(f[3]);
    if (start.empty() || end.empty()) continue;
    if (antonym) {
      AddAntonym(start, end);
    } else {
      AddHasProperty(start, end);
    }
  }
}

std::vector<std::string> KnowledgeBase::Antonyms(std::string_view word) const {
  return Lookup(antonyms_, word);
}

std::vector<std::string> KnowledgeBase::HasProperty(std::string_view word) const {
  return Lookup(has_property_, word);
}

GeneratedProperties::GeneratedProperties(const std::filesystem::path &path) {
  for (const std::string &line : ReadLines(path)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    std::vector<std::string> f = Split(trimmed, '\t');
    Add(f[0], std::vector<std::string>(f.begin() + 1, f.end()));
  }
}

void GeneratedProperties::Add(std::string_view word, std::vector<std::string> properties) {
  auto &values = properties_[Key(word)];
  for (std::string &p : properties) {
    std::string v(Trim(p));
    if (!v.empty()) values.push_back(std::move(v));
  }
}

std::vector<std::string> GeneratedProperties::HasProperty(std::string_view word) const {
  return Lookup(properties_, word);
}

HttpCommonsense::HttpCommonsense(std::string url, int top_k, int timeout_seconds)
    : top_k_(top_k), timeout_seconds_(timeout_seconds) {
  Require(StartsWith(url, "http://"), ErrorCode::kInvalidArgument,
          "commonsense endpoint must be an http:// URL, got " + url);
  const size_t slash = url.find('/', 7);
  host_ = url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
}

std::vector<std::string> HttpCommonsense::HasProperty(std::string_view word) const {
  const std::string key = Key(word);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  httplib::Client client(host_);
  client.set_connection_timeout(timeout_seconds_);
  client.set_read_timeout(timeout_seconds_);
  nlohmann::json request = {{"head", key}, {"relation", "HasProperty"}, {"k", top_k_}};
  auto response = client.Post(path_, request.dump(), "application/json");
  Require(static_cast<bool>(response), ErrorCode::kStageFailure,
          "commonsense endpoint " + host_ + path_ + " unreachable: " +
              httplib::to_string(response.error()));
  Require(response->status == 200, ErrorCode::kStageFailure,
          "commonsense endpoint returned HTTP " + std::to_string(response->status));
  std::vector<std::string> tails;
  try {
    nlohmann::json body = nlohmann::json::parse(response->body);
    const nlohmann::json &list = body.is_array() ? body : body.at("tails");
    for (const auto &t : list) {
      std::string v(Trim(t.get<std::string>()));
      if (!v.empty()) tails.push_back(std::move(v));
    }
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kStageFailure, std::string("bad commonsense response: ") + e.what());
  }
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(key, tails);
  return tails;
}

std::vector<std::string> CombinedLookup::Antonyms(std::string_view word) const {
  std::vector<std::string> out;
  for (const RelationLookup *part : parts_) {
    for (std::string &w : part->Antonyms(word)) {
      if (std::none_of(out.begin(), out.end(), [&](const std::string &o) { return EqualsIgnoreCase(o, w); })) {
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

std::vector<std::string> CombinedLookup::HasProperty(std::string_view word) const {
  std::vector<std::string> out;
  for (const RelationLookup *part : parts_) {
    for (std::string &w : part->HasProperty(word)) {
      if (std::none_of(out.begin(), out.end(), [&](const std::string &o) { return EqualsIgnoreCase(o, w); })) {
        out.push_back(std::move(w));
      }
    }
  }
  return out;
}

}  // namespace simprobe::distractors
