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

#ifndef SIMPROBE_DISTRACTORS_CONFIRM_H_
#define SIMPROBE_DISTRACTORS_CONFIRM_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simprobe/distractors/candidate.h"
#include "simprobe/mining/simile_record.h"

namespace simprobe::distractors {

// A probe before human confirmation: the selected distractors plus the
// remaining candidates in rank order, used as replacements.
struct DraftProbe {
  mining::SimileRecord record;
  std::vector<DistractorCandidate> selected;
  std::vector<DistractorCandidate> reserve;
};

// y: the candidate is a true negative; n: it also fits; u: unsure.
enum class Judgment { kTrueNegative, kNotNegative, kUncertain };

char JudgmentCode(Judgment judgment);
Judgment ParseJudgment(char code);

class AnnotationSession {
 public:
  virtual ~AnnotationSession() = default;
  virtual Judgment Judge(int annotator, const DraftProbe &draft,
                         const DistractorCandidate &candidate) = 0;
};

// Line-oriented prompt: shows the masked sentence, the gold property and the
// candidate, then reads y/n/u. Invalid answers are asked again; end of input
// raises kAborted.
class StreamSession : public AnnotationSession {
 public:
  StreamSession(std::istream &in, std::ostream &out) : in_(in), out_(out) {}
  Judgment Judge(int annotator, const DraftProbe &draft,
                 const DistractorCandidate &candidate) override;

 private:
  std::istream &in_;
  std::ostream &out_;
};

// Answers from a callback, for tests and replaying recorded judgments.
class ScriptedSession : public AnnotationSession {
 public:
  using Script = std::function<Judgment(int annotator, const DraftProbe &draft,
                                        const DistractorCandidate &candidate)>;
  explicit ScriptedSession(Script script) : script_(std::move(script)) {}
  Judgment Judge(int annotator, const DraftProbe &draft,
                 const DistractorCandidate &candidate) override {
    return script_(annotator, draft, candidate);
  }

 private:
  Script script_;
};

struct ConfirmOptions {
  int annotators = 3;
  // A distractor is replaced when at least this many annotators answer
  // anything other than y.
  int threshold = 2;
  // Appended to as judgments arrive, one JSON object per line.
  std::optional<std::filesystem::path> transcript;
};

struct ExcludedProbe {
  std::string record_id;
  std::string reason;
};

struct ConfirmResult {
  std::vector<DraftProbe> confirmed;
  std::vector<ExcludedProbe> excluded;
};

// Reviews every selected distractor not yet labelled true_negative. Rejected
// distractors are swapped for the next reserve candidate, which is reviewed
// in turn; a draft whose reserve runs out is excluded.
ConfirmResult ConfirmDistractors(std::vector<DraftProbe> drafts, AnnotationSession &session,
                                 const ConfirmOptions &options = {});

}  // namespace simprobe::distractors

#endif  // SIMPROBE_DISTRACTORS_CONFIRM_H_
