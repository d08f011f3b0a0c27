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

#include "simprobe/distractors/cooccurrence.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {

void CooccurrenceIndex::Add(std::string_view head, std::string_view modifier, long count) {
  std::string h = ToLower(Trim(head)), m = ToLower(Trim(modifier));
  if (h.empty() || m.empty() || count <= 0) return;
  counts_[h][m] += count;
}

void CooccurrenceIndex::AddParse(const std::vector<std::string> &tokens,
                                 const mining::DependencyParse &parse) {
  for (int i = 0; i < parse.size(); ++i) {
    const std::string &rel = parse.deprel[i];
    const bool modifier = rel == "amod" || rel == "advmod" || StartsWith(rel, "amod:") ||
                          StartsWith(rel, "advmod:");
    if (!modifier || parse.head[i] < 0) continue;
    const mining::Upos tag = parse.upos[i];
    if (tag != mining::Upos::kAdj && tag != mining::Upos::kAdv) continue;
    Add(tokens[parse.head[i]], tokens[i]);
  }
}

void CooccurrenceIndex::AddConlluFile(const std::filesystem::path &path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kNotFound, "cannot open " + path.string());
  std::string line, block;
  auto flush = [&] {
    for (const auto &[tokens, parse] : mining::ReadConllu(block)) AddParse(tokens, parse);
    block.clear();
  };
  while (std::getline(in, line)) {
    block += line;
    block += '\n';
    if (Trim(line).empty()) flush();
  }
  flush();
}

CooccurrenceIndex CooccurrenceIndex::LoadTsv(const std::filesystem::path &path) {
  CooccurrenceIndex index;
  int line_no = 0;
  for (const std::string &line : ReadLines(path)) {
    ++line_no;
    if (Trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> f = Split(line, '\t');
    char *end = nullptr;
    const long count = f.size() == 3 ? std::strtol(f[2].c_str(), &end, 10) : 0;
    Require(f.size() == 3 && end && *end == '\0', ErrorCode::kDataLoss,
            path.string() + ":" + std::to_string(line_no) + ": expected head, modifier, count");
    index.Add(f[0], f[1], count);
  }
  return index;
}

void CooccurrenceIndex::SaveTsv(const std::filesystem::path &path) const {
  std::string out;
  for (const auto &[head, mods] : counts_) {
    for (const auto &[mod, count] : mods) {
      out += head + "\t" + mod + "\t" + std::to_string(count) + "\n";
    }
  }
  WriteFileAtomic(path, out);
}

const std::map<std::string, long> *CooccurrenceIndex::Modifiers(std::string_view head) const {
  auto it = counts_.find(ToLower(Trim(head)));
  return it == counts_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, long>> RankCooccurrence(std::string_view word,
                                                           const CooccurrenceIndex &index,
                                                           int limit, long min_frequency) {
  std::vector<std::pair<std::string, long>> ranked;
  const auto *mods = index.Modifiers(word);
  if (mods == nullptr) return ranked;
  for (const auto &[mod, count] : *mods) {
    if (count >= min_frequency) ranked.emplace_back(mod, count);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (static_cast<int>(ranked.size()) > limit) ranked.resize(static_cast<size_t>(limit));
  return ranked;
}

}  // namespace simprobe::distractors
