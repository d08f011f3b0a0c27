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

#ifndef SIMPROBE_MINING_ANNOTATE_H_
#define SIMPROBE_MINING_ANNOTATE_H_

#include "simprobe/mining/parse.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::mining {

// Fills topic (nominal subject governing the comparison) and event
// (governing predicate plus its auxiliaries) from a dependency parse.
// Records that already carry both spans are returned unchanged. When no
// subject is found, topic stays empty and needs_review is set.
SimileRecord AnnotateComponents(const SimileRecord &record,
                                const DependencyParser &parser);

// Same rules applied to a given parse; the parse must cover record.tokens.
SimileRecord AnnotateWithParse(const SimileRecord &record,
                               const DependencyParse &parse);

}  // namespace simprobe::mining

#endif  // SIMPROBE_MINING_ANNOTATE_H_
