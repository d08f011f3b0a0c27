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

#include "simprobe/distractors/probe_item.h"

#include <algorithm>
#include <regex>

#include "simprobe/common/csv.h"
#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {
namespace {

const nlohmann::json *FirstKey(const nlohmann::json &row, std::initializer_list<const char *> keys) {
  for (const char *key : keys) {
    auto it = row.find(key);
    if (it != row.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

std::string AsString(const nlohmann::json &v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  return v.dump();
}

std::vector<std::string> MaskedTokensFrom(const nlohmann::json &sentence) {
  static const std::regex kMaskSpellings(R"(<mask>|\[mask\]|\[MASK\]|_{2,})");
  std::vector<std::string> tokens;
  if (sentence.is_array()) {
    for (const auto &t : sentence) tokens.push_back(AsString(t));
    for (std::string &t : tokens) {
      if (std::regex_match(t, kMaskSpellings)) t = std::string(kMaskToken);
    }
    return tokens;
  }
  const std::string text =
      std::regex_replace(AsString(sentence), kMaskSpellings, std::string(" ") + std::string(kMaskToken) + " ");
  return TokenizeWords(text);
}

std::vector<std::string> OptionsFrom(const nlohmann::json &row) {
  std::vector<std::string> options;
  if (const nlohmann::json *v = FirstKey(row, {"options", "choices", "candidates"})) {
    if (v->is_array()) {
      for (const auto &o : *v) options.push_back(AsString(o));
    } else if (v->is_object()) {
      for (const char *k : {"A", "B", "C", "D"}) {
        if (v->contains(k)) options.push_back(AsString((*v)[k]));
      }
    } else if (v->is_string()) {
      // Delimited option lists in flat files.
      std::string s = v->get<std::string>();
      char delim = s.find('|') != std::string::npos ? '|' : (s.find(';') != std::string::npos ? ';' : ',');
      for (const std::string &o : Split(s, delim)) options.emplace_back(Trim(o));
    }
    return options;
  }
  const std::vector<std::vector<const char *>> columns = {
      {"option_a", "A", "a", "option1", "option_1"},
      {"option_b", "B", "b", "option2", "option_2"},
      {"option_c", "C", "c", "option3", "option_3"},
      {"option_d", "D", "d", "option4", "option_4"},
  };
  for (const auto &names : columns) {
    for (const char *name : names) {
      auto it = row.find(name);
      if (it != row.end() && !it->is_null()) {
        options.push_back(AsString(*it));
        break;
      }
    }
  }
  return options;
}

int AnswerIndexFrom(const nlohmann::json &row, const std::vector<std::string> &options) {
  const nlohmann::json *v = FirstKey(row, {"answer_index", "label", "answer", "gold", "property"});
  Require(v != nullptr, ErrorCode::kDataLoss, "no answer field");
  if (v->is_number_integer()) return v->get<int>();
  std::string s(Trim(AsString(*v)));
  if (s.size() == 1 && s[0] >= 'A' && s[0] <= 'D') return s[0] - 'A';
  if (s.size() == 1 && s[0] >= '0' && s[0] <= '3') return s[0] - '0';
  for (size_t i = 0; i < options.size(); ++i) {
    if (EqualsIgnoreCase(options[i], s)) return static_cast<int>(i);
  }
  Fail(ErrorCode::kDataLoss, "answer \"" + s + "\" is not among the options");
}

// First case-insensitive occurrence of `phrase` as a token sequence.
TokenSpan Locate(const std::vector<std::string> &tokens, const std::string &phrase,
                 int from = 0) {
  std::vector<std::string> needle = TokenizeWords(phrase);
  if (needle.empty()) return {};
  const int n = static_cast<int>(tokens.size()), m = static_cast<int>(needle.size());
  for (int i = from; i + m <= n; ++i) {
    bool match = true;
    for (int k = 0; k < m && match; ++k) match = EqualsIgnoreCase(tokens[i + k], needle[k]);
    if (match) return {i, i + m};
  }
  return {};
}

std::vector<nlohmann::json> RowsFromTable(const std::string &text, char delimiter) {
  std::vector<std::vector<std::string>> table = ParseDelimited(text, delimiter);
  std::vector<nlohmann::json> rows;
  if (table.empty()) return rows;
  const std::vector<std::string> &header = table.front();
  for (size_t r = 1; r < table.size(); ++r) {
    nlohmann::json row = nlohmann::json::object();
    for (size_t c = 0; c < header.size() && c < table[r].size(); ++c) {
      std::string key(Trim(header[c]));
      if (!table[r][c].empty()) row[key] = table[r][c];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int ProbeItem::mask_index() const {
  auto it = std::find(masked_tokens.begin(), masked_tokens.end(), kMaskToken);
  return it == masked_tokens.end() ? -1 : static_cast<int>(it - masked_tokens.begin());
}

std::vector<std::string> Validate(const ProbeItem &item) {
  std::vector<std::string> issues;
  const auto masks = std::count(item.masked_tokens.begin(), item.masked_tokens.end(), kMaskToken);
  if (masks != 1) issues.push_back("expected one mask sentinel, found " + std::to_string(masks));
  if (item.options.size() != kNumOptions) {
    issues.push_back("expected 4 options, found " + std::to_string(item.options.size()));
  }
  for (size_t i = 0; i < item.options.size(); ++i) {
    if (Trim(item.options[i]).empty()) issues.push_back("empty option");
    for (size_t j = i + 1; j < item.options.size(); ++j) {
      if (EqualsIgnoreCase(item.options[i], item.options[j])) {
        issues.push_back("duplicate option \"" + item.options[i] + "\"");
      }
    }
  }
  if (item.answer_index < 0 || item.answer_index >= static_cast<int>(item.options.size())) {
    issues.push_back("answer_index out of range");
  }
  if (item.origins.size() != kNumDistractors) issues.push_back("expected 3 origin tags");
  const int n = static_cast<int>(item.masked_tokens.size());
  const int mask = item.mask_index();
  auto check = [&](const TokenSpan &s, const char *name) {
    if (s.empty()) return;
    if (s.begin < 0 || s.end > n) issues.push_back(std::string(name) + " span out of bounds");
    if (s.contains(mask)) issues.push_back(std::string(name) + " span covers the mask");
  };
  check(item.spans.topic, "topic");
  check(item.spans.vehicle, "vehicle");
  check(item.spans.event, "event");
  for (const TokenSpan &c : item.spans.comparators) check(c, "comparator");
  return issues;
}

void to_json(nlohmann::json &j, const ProbeItem &item) {
  j = {{"record_id", item.record_id},
       {"masked_tokens", item.masked_tokens},
       {"options", item.options},
       {"answer_index", item.answer_index},
       {"origins", item.origins},
       {"dataset", item.dataset},
       {"spans",
        {{"topic", item.spans.topic},
         {"vehicle", item.spans.vehicle},
         {"event", item.spans.event},
         {"comparator", item.spans.comparators}}}};
  j["category"] = item.category ? nlohmann::json(mining::CategoryName(*item.category))
                                : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json &j, ProbeItem &item) {
  item.record_id = j.value("record_id", std::string());
  item.masked_tokens = j.at("masked_tokens").get<std::vector<std::string>>();
  item.options = j.at("options").get<std::vector<std::string>>();
  item.answer_index = j.at("answer_index").get<int>();
  item.origins = j.value("origins", std::vector<std::string>(kNumDistractors,
                                                             std::string(kUnknownOrigin)));
  item.dataset = j.value("dataset", std::string());
  item.category.reset();
  if (j.contains("category") && !j["category"].is_null()) {
    item.category = mining::ParseCategory(j["category"].get<std::string>());
  }
  item.spans = {};
  if (j.contains("spans")) {
    const auto &s = j["spans"];
    if (s.contains("topic")) item.spans.topic = s["topic"].get<TokenSpan>();
    if (s.contains("vehicle")) item.spans.vehicle = s["vehicle"].get<TokenSpan>();
    if (s.contains("event")) item.spans.event = s["event"].get<TokenSpan>();
    if (s.contains("comparator")) {
      item.spans.comparators = s["comparator"].get<std::vector<TokenSpan>>();
    }
  }
}

std::vector<ProbeItem> ReadProbeItems(const std::filesystem::path &path) {
  std::vector<ProbeItem> items;
  int line = 0;
  for (const nlohmann::json &row : ReadJsonl(path)) {
    ++line;
    try {
      items.push_back(row.get<ProbeItem>());
    } catch (const nlohmann::json::exception &e) {
      Fail(ErrorCode::kDataLoss, path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  return items;
}

void WriteProbeItems(const std::filesystem::path &path, const std::vector<ProbeItem> &items) {
  std::vector<nlohmann::json> rows;
  rows.reserve(items.size());
  for (const ProbeItem &item : items) rows.push_back(item);
  WriteJsonl(path, rows);
}

ProbeItem ItemFromReleased(const nlohmann::json &row, const std::string &dataset, int index) {
  const std::string where = dataset + " item " + std::to_string(index);
  try {
    Require(row.is_object(), ErrorCode::kDataLoss, "row is not an object");
    ProbeItem item;
    item.dataset = dataset;
    const nlohmann::json *id = FirstKey(row, {"record_id", "id", "qid"});
    item.record_id = id ? AsString(*id) : dataset + "-" + std::to_string(index);

    const nlohmann::json *sentence =
        FirstKey(row, {"masked_tokens", "masked_sentence", "sentence", "question", "text", "query"});
    Require(sentence != nullptr, ErrorCode::kDataLoss, "no sentence field");
    item.masked_tokens = MaskedTokensFrom(*sentence);
    item.options = OptionsFrom(row);
    Require(!item.options.empty(), ErrorCode::kDataLoss, "no options");
    for (std::string &o : item.options) o = std::string(Trim(o));
    item.answer_index = AnswerIndexFrom(row, item.options);
    Require(item.answer_index >= 0 && item.answer_index < static_cast<int>(item.options.size()),
            ErrorCode::kDataLoss, "answer index out of range");

    if (item.mask_index() < 0) {
      TokenSpan gold = Locate(item.masked_tokens, item.answer());
      Require(!gold.empty(), ErrorCode::kDataLoss, "sentence has no mask and no answer word");
      item.masked_tokens.erase(item.masked_tokens.begin() + gold.begin,
                               item.masked_tokens.begin() + gold.end);
      item.masked_tokens.insert(item.masked_tokens.begin() + gold.begin, std::string(kMaskToken));
    }

    if (const nlohmann::json *o = FirstKey(row, {"origins"}); o && o->is_array()) {
      item.origins = o->get<std::vector<std::string>>();
    } else {
      item.origins.assign(kNumDistractors, std::string(kUnknownOrigin));
    }
    if (const nlohmann::json *t = FirstKey(row, {"topic", "tenor"})) {
      item.spans.topic = Locate(item.masked_tokens, AsString(*t));
    }
    if (const nlohmann::json *v = FirstKey(row, {"vehicle"})) {
      // The vehicle follows the mask in closed similes.
      item.spans.vehicle = Locate(item.masked_tokens, AsString(*v), std::max(0, item.mask_index()));
      if (item.spans.vehicle.empty()) item.spans.vehicle = Locate(item.masked_tokens, AsString(*v));
    }
    if (const nlohmann::json *e = FirstKey(row, {"event"})) {
      item.spans.event = Locate(item.masked_tokens, AsString(*e));
    }
    const int mask = item.mask_index();
    if (const nlohmann::json *c = FirstKey(row, {"comparator"})) {
      const std::string comparator = ToLower(AsString(*c));
      if (comparator.find("as") != std::string::npos && mask > 0 &&
          EqualsIgnoreCase(item.masked_tokens[mask - 1], "as")) {
        item.spans.comparators.push_back({mask - 1, mask});
        TokenSpan second = Locate(item.masked_tokens, "as", mask + 1);
        if (!second.empty()) item.spans.comparators.push_back(second);
      } else {
        TokenSpan span = Locate(item.masked_tokens, comparator);
        if (!span.empty()) item.spans.comparators.push_back(span);
      }
    } else if (mask > 0 && EqualsIgnoreCase(item.masked_tokens[mask - 1], "as")) {
      TokenSpan second = Locate(item.masked_tokens, "as", mask + 1);
      if (!second.empty() && second.begin == mask + 1) {
        item.spans.comparators = {{mask - 1, mask}, second};
      }
    }
    if (const nlohmann::json *cat = FirstKey(row, {"category", "type"})) {
      try {
        item.category = mining::ParseCategory(ToLower(AsString(*cat)));
      } catch (const Error &) {
        item.category.reset();
      }
    }
    return item;
  } catch (const Error &e) {
    Fail(ErrorCode::kDataLoss, where + ": " + e.what());
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kDataLoss, where + ": " + e.what());
  }
}

std::vector<ProbeItem> ReadReleasedItems(const std::filesystem::path &path,
                                         const std::string &dataset) {
  const std::string ext = ToLower(path.extension().string());
  std::vector<nlohmann::json> rows;
  if (ext == ".jsonl") {
    rows = ReadJsonl(path);
  } else if (ext == ".csv" || ext == ".tsv") {
    rows = RowsFromTable(ReadFile(path), ext == ".csv" ? ',' : '\t');
  } else {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(ReadFile(path));
    } catch (const nlohmann::json::exception &e) {
      Fail(ErrorCode::kDataLoss, path.string() + ": " + e.what());
    }
    if (doc.is_object()) {
      for (const char *key : {"data", "items", "examples"}) {
        if (doc.contains(key)) {
          doc = doc[key];
          break;
        }
      }
    }
    Require(doc.is_array(), ErrorCode::kDataLoss, path.string() + ": expected an array of items");
    rows.assign(doc.begin(), doc.end());
  }
  std::vector<ProbeItem> items;
  items.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    items.push_back(ItemFromReleased(rows[i], dataset, static_cast<int>(i)));
  }
  return items;
}

}  // namespace simprobe::distractors
