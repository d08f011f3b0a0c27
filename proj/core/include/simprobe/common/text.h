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

#ifndef SIMPROBE_COMMON_TEXT_H_
#define SIMPROBE_COMMON_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace simprobe {

// Sentinels used in surface token sequences. Model adapters map them onto
// their own special vocabulary entries.
inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr std::string_view kUnkToken = "[UNK]";

std::string ToLower(std::string_view text);
bool EqualsIgnoreCase(std::string_view a, std::string_view b);
std::string_view Trim(std::string_view text);
std::vector<std::string> Split(std::string_view text, char delimiter);
std::vector<std::string> SplitWhitespace(std::string_view text);
std::string Join(const std::vector<std::string> &parts, std::string_view sep);
bool StartsWith(std::string_view text, std::string_view prefix);
bool EndsWith(std::string_view text, std::string_view suffix);

// True if every byte sequence in `text` is well-formed UTF-8.
bool IsValidUtf8(std::string_view text);

// Splits a raw text line into surface words. Punctuation is separated from
// words except for word-internal apostrophes and hyphens; the bracketed
// sentinels [MASK] and [UNK] stay intact.
std::vector<std::string> TokenizeWords(std::string_view line);

bool IsPunctuationToken(std::string_view token);

}  // namespace simprobe

#endif  // SIMPROBE_COMMON_TEXT_H_
