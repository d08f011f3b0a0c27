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

#ifndef SIMPROBE_EVAL_QUIZ_H_
#define SIMPROBE_EVAL_QUIZ_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "simprobe/distractors/probe_item.h"
#include "simprobe/eval/report.h"

namespace simprobe::eval {

class QuizSession {
 public:
  virtual ~QuizSession() = default;
  // Option index chosen by `annotator`.
  virtual int Answer(int annotator, const distractors::ProbeItem &item) = 0;
  // Final answer for an item without a majority.
  virtual int Adjudicate(const distractors::ProbeItem &item, const std::vector<int> &votes) = 0;
};

// Shows the masked sentence with options A-D and reads a letter (or 1-4).
// Invalid input is asked again; end of input raises kAborted.
class StreamQuizSession : public QuizSession {
 public:
  StreamQuizSession(std::istream &in, std::ostream &out) : in_(in), out_(out) {}
  int Answer(int annotator, const distractors::ProbeItem &item) override;
  int Adjudicate(const distractors::ProbeItem &item, const std::vector<int> &votes) override;

 private:
  int ReadChoice(const std::string &prompt);
  void Show(const distractors::ProbeItem &item);

  std::istream &in_;
  std::ostream &out_;
};

class ScriptedQuizSession : public QuizSession {
 public:
  using AnswerFn = std::function<int(int annotator, const distractors::ProbeItem &item)>;
  using AdjudicateFn =
      std::function<int(const distractors::ProbeItem &item, const std::vector<int> &votes)>;
  ScriptedQuizSession(AnswerFn answer, AdjudicateFn adjudicate)
      : answer_(std::move(answer)), adjudicate_(std::move(adjudicate)) {}
  int Answer(int annotator, const distractors::ProbeItem &item) override {
    return answer_(annotator, item);
  }
  int Adjudicate(const distractors::ProbeItem &item, const std::vector<int> &votes) override {
    return adjudicate_(item, votes);
  }

 private:
  AnswerFn answer_;
  AdjudicateFn adjudicate_;
};

struct QuizOptions {
  int annotators = 3;
  uint64_t seed = 0;
  // Appended to after every answer, one JSON object per line.
  std::optional<std::filesystem::path> transcript;
};

// `count` items drawn without replacement, in a seed-determined order.
std::vector<distractors::ProbeItem> SampleItems(const std::vector<distractors::ProbeItem> &items,
                                                size_t count, uint64_t seed);

// Each annotator answers every item in their own shuffled order. An item's
// answer is the option chosen by more than half of the annotators, otherwise
// the session adjudicates. Requires at least 3 annotators. Errors from the
// session (such as kAborted) propagate; the transcript keeps what was
// answered so far.
ExperimentReport HumanQuiz(const std::vector<distractors::ProbeItem> &items, QuizSession &session,
                           const QuizOptions &options = {});

}  // namespace simprobe::eval

#endif  // SIMPROBE_EVAL_QUIZ_H_
