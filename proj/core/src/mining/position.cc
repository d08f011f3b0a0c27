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

#include "simprobe/mining/position.h"

#include <algorithm>

#include "simprobe/common/error.h"

namespace simprobe::mining {

Position PositionOfToken(int anchor, int length) {
  Require(length > 0 && anchor >= 0 && anchor < length,
          ErrorCode::kInvalidArgument, "anchor outside sentence");
  const int base = length / 3;
  const int remainder = length % 3;
  const int first = base + (remainder > 0 ? 1 : 0);
  const int second = base + (remainder > 1 ? 1 : 0);
  if (anchor < first) return Position::kStart;
  if (anchor < first + second) return Position::kMiddle;
  return Position::kEnd;
}

Position ClassifyPosition(const SimileRecord &record) {
  Require(!record.comparators.empty(), ErrorCode::kPrecondition,
          "record has no comparator span");
  int anchor = record.comparators.front().begin;
  for (const TokenSpan &c : record.comparators) anchor = std::min(anchor, c.begin);
  return PositionOfToken(anchor, static_cast<int>(record.tokens.size()));
}

}  // namespace simprobe::mining
