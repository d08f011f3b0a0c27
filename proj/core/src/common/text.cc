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

#include "simprobe/common/text.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace simprobe {
namespace {

bool IsAsciiSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool IsWordByte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

// Multi-byte UTF-8 punctuation that commonly appears in English text.
constexpr std::array<std::string_view, 9> kUnicodePunct = {
    "‘", "’", "“", "”", "–",
    "—", "…", "«", "»"};

size_t UnicodePunctLength(std::string_view text, size_t pos) {
  for (std::string_view p : kUnicodePunct) {
    if (text.substr(pos, p.size()) == p) return p.size();
  }
  return 0;
}

}  // namespace

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) !=
        std::tolower(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

std::string_view Trim(std::string_view text) {
  size_t b = 0, e = text.size();
  while (b < e && IsAsciiSpace(text[b])) ++b;
  while (e > b && IsAsciiSpace(text[e - 1])) --e;
  return text.substr(b, e - b);
}

std::vector<std::string> Split(std::string_view text, char delimiter) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t pos = text.find(delimiter, start);
    if (pos == std::string_view::npos) {
      parts.emplace_back(text.substr(start));
      break;
    }
    parts.emplace_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsAsciiSpace(text[i])) ++i;
    size_t j = i;
    while (j < text.size() && !IsAsciiSpace(text[j])) ++j;
    if (j > i) parts.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return parts;
}

std::string Join(const std::vector<std::string> &parts, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool StartsWith(std::string_view text, std::string_view prefix) {
  return text.substr(0, prefix.size()) == prefix;
}

bool EndsWith(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         text.substr(text.size() - suffix.size()) == suffix;
}

bool IsValidUtf8(std::string_view text) {
  size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    int extra;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= text.size()) return false;
    for (int k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

std::vector<std::string> TokenizeWords(std::string_view line) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  size_t i = 0;
  while (i < line.size()) {
    unsigned char c = line[i];
    if (IsAsciiSpace(c)) {
      flush();
      ++i;
      continue;
    }
    if (c == '[') {
      bool matched = false;
      for (std::string_view sentinel : {kMaskToken, kUnkToken}) {
        if (line.substr(i, sentinel.size()) == sentinel) {
          flush();
          tokens.emplace_back(sentinel);
          i += sentinel.size();
          matched = true;
          break;
        }
      }
      if (matched) continue;
    }
    size_t upunct = UnicodePunctLength(line, i);
    if (upunct > 0) {
      // A right single quote between letters is an apostrophe.
      bool apostrophe = line.substr(i, upunct) == "’" && !current.empty() &&
                        i + upunct < line.size() &&
                        std::isalpha(static_cast<unsigned char>(line[i + upunct]));
      if (apostrophe) {
        current += '\'';
      } else {
        flush();
        tokens.emplace_back(line.substr(i, upunct));
      }
      i += upunct;
      continue;
    }
    if (IsWordByte(c)) {
      current += static_cast<char>(c);
      ++i;
      continue;
    }
    // Word-internal joiners: don't, well-known, 3.5
    bool next_is_word = i + 1 < line.size() &&
                        IsWordByte(static_cast<unsigned char>(line[i + 1]));
    bool joiner = (c == '\'' || c == '-') && !current.empty() && next_is_word;
    bool decimal = (c == '.' || c == ',') && !current.empty() &&
                   std::isdigit(static_cast<unsigned char>(current.back())) &&
                   i + 1 < line.size() &&
                   std::isdigit(static_cast<unsigned char>(line[i + 1]));
    if (joiner || decimal) {
      current += static_cast<char>(c);
      ++i;
      continue;
    }
    flush();
    tokens.emplace_back(1, static_cast<char>(c));
    ++i;
  }
  flush();
  return tokens;
}

bool IsPunctuationToken(std::string_view token) {
  if (token.empty()) return false;
  if (UnicodePunctLength(token, 0) == token.size()) return true;
  return std::all_of(token.begin(), token.end(), [](char ch) {
    return std::ispunct(static_cast<unsigned char>(ch));
  });
}

}  // namespace simprobe
