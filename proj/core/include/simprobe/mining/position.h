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

#ifndef SIMPROBE_MINING_POSITION_H_
#define SIMPROBE_MINING_POSITION_H_

#include "simprobe/mining/simile_record.h"

namespace simprobe::mining {

// Splits a sentence of `length` tokens into three thirds, giving remainder
// tokens to the earlier thirds, and returns the third holding `anchor`.
Position PositionOfToken(int anchor, int length);

// Position of the simile anchored at its first comparator token.
Position ClassifyPosition(const SimileRecord &record);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_POSITION_H_
