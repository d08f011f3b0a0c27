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

#ifndef SIMPROBE_COMMON_TOKEN_SPAN_H_
#define SIMPROBE_COMMON_TOKEN_SPAN_H_

#include <compare>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace simprobe {

// Half-open range [begin, end) of token indices.
struct TokenSpan {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  bool empty() const { return end <= begin; }
  bool contains(int index) const { return index >= begin && index < end; }
  bool overlaps(const TokenSpan &other) const {
    return !empty() && !other.empty() && begin < other.end &&
           other.begin < end;
  }

  auto operator<=>(const TokenSpan &) const = default;
};

// Remaps a span after the tokens in `replaced` were substituted by
// `new_length` tokens. Spans strictly after the replaced range shift; spans
// equal to the replaced range take its new extent.
TokenSpan ShiftSpan(TokenSpan span, TokenSpan replaced, int new_length);

// Joins the tokens covered by `span` with single spaces.
std::string SpanText(const std::vector<std::string> &tokens, TokenSpan span);

void to_json(nlohmann::json &j, const TokenSpan &span);
void from_json(const nlohmann::json &j, TokenSpan &span);

}  // namespace simprobe

#endif  // SIMPROBE_COMMON_TOKEN_SPAN_H_
