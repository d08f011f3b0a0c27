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

#include "simprobe/common/token_span.h"

#include "simprobe/common/error.h"

namespace simprobe {

TokenSpan ShiftSpan(TokenSpan span, TokenSpan replaced, int new_length) {
  if (span.empty()) return span;
  int delta = new_length - replaced.size();
  if (span == replaced) return {replaced.begin, replaced.begin + new_length};
  if (span.begin >= replaced.end) return {span.begin + delta, span.end + delta};
  if (span.end <= replaced.begin) return span;
  Fail(ErrorCode::kInvalidArgument,
       "span [" + std::to_string(span.begin) + "," + std::to_string(span.end) +
           ") partially overlaps replaced range");
}

std::string SpanText(const std::vector<std::string> &tokens, TokenSpan span) {
  std::string out;
  for (int i = span.begin; i < span.end && i < static_cast<int>(tokens.size());
       ++i) {
    if (!out.empty()) out += ' ';
    out += tokens[i];
  }
  return out;
}

void to_json(nlohmann::json &j, const TokenSpan &span) {
  j = nlohmann::json::array({span.begin, span.end});
}

void from_json(const nlohmann::json &j, TokenSpan &span) {
  if (!j.is_array() || j.size() != 2) {
    Fail(ErrorCode::kInvalidArgument, "span must be a [begin,end) pair");
  }
  span.begin = j[0].get<int>();
  span.end = j[1].get<int>();
}

}  // namespace simprobe
