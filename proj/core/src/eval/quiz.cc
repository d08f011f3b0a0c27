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

#include "simprobe/eval/quiz.h"

#include <fstream>
#include <iostream>
#include <numeric>

#include <nlohmann/json.hpp>

#include "simprobe/common/error.h"
#include "simprobe/common/random.h"
#include "simprobe/common/text.h"

namespace simprobe::eval {

void StreamQuizSession::Show(const distractors::ProbeItem &item) {
  out_ << "\n" << Join(item.masked_tokens, " ") << "\n";
  for (size_t i = 0; i < item.options.size(); ++i) {
    out_ << "  " << static_cast<char>('A' + i) << ". " << item.options[i] << "\n";
  }
}

int StreamQuizSession::ReadChoice(const std::string &prompt) {
  std::string line;
  for (;;) {
    out_ << prompt << " [A-D] " << std::flush;
    if (!std::getline(in_, line)) throw Error(ErrorCode::kAborted, "quiz input ended");
    const std::string answer = ToLower(Trim(line));
    if (answer.size() == 1 && answer[0] >= 'a' && answer[0] < 'a' + distractors::kNumOptions) {
      return answer[0] - 'a';
    }
    if (answer.size() == 1 && answer[0] >= '1' && answer[0] < '1' + distractors::kNumOptions) {
      return answer[0] - '1';
    }
    out_ << "please answer with a letter A-D\n";
  }
}

int StreamQuizSession::Answer(int annotator, const distractors::ProbeItem &item) {
  Show(item);
  return ReadChoice("annotator " + std::to_string(annotator + 1) + ":");
}

int StreamQuizSession::Adjudicate(const distractors::ProbeItem &item, const std::vector<int> &votes) {
  Show(item);
  std::string seen;
  for (int v : votes) seen += std::string(seen.empty() ? "" : ", ") + static_cast<char>('A' + v);
  out_ << "annotators disagreed (" << seen << ")\n";
  return ReadChoice("adjudicated answer:");
}

std::vector<distractors::ProbeItem> SampleItems(const std::vector<distractors::ProbeItem> &items,
                                                size_t count, uint64_t seed) {
  Require(count <= items.size(), ErrorCode::kInvalidArgument,
          "cannot sample " + std::to_string(count) + " of " + std::to_string(items.size()) +
              " items");
  std::vector<size_t> order(items.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  Shuffle(order, rng);
  std::vector<distractors::ProbeItem> out;
  for (size_t i = 0; i < count; ++i) out.push_back(items[order[i]]);
  return out;
}

ExperimentReport HumanQuiz(const std::vector<distractors::ProbeItem> &items, QuizSession &session,
                           const QuizOptions &options) {
  Require(options.annotators >= 3, ErrorCode::kPrecondition, "the quiz needs at least 3 annotators");
  Require(!items.empty(), ErrorCode::kPrecondition, "no quiz items");
  std::ofstream transcript;
  if (options.transcript) {
    if (options.transcript->has_parent_path()) {
      std::filesystem::create_directories(options.transcript->parent_path());
    }
    transcript.open(*options.transcript, std::ios::app);
    Require(transcript.good(), ErrorCode::kNotFound,
            "cannot open transcript " + options.transcript->string());
  }
  auto log = [&](const nlohmann::json &row) {
    if (transcript.is_open()) transcript << row.dump() << '\n' << std::flush;
  };

  const size_t n = items.size();
  std::vector<std::vector<int>> votes(n);
  for (int a = 0; a < options.annotators; ++a) {
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(MixSeed(options.seed, static_cast<uint64_t>(a)));
    Shuffle(order, rng);
    for (size_t i : order) {
      const int choice = session.Answer(a, items[i]);
      Require(choice >= 0 && choice < static_cast<int>(items[i].options.size()),
              ErrorCode::kInvalidArgument, "answer out of range");
      votes[i].push_back(choice);
      log({{"record_id", items[i].record_id}, {"annotator", a}, {"choice", choice}});
    }
  }

  ExperimentReport report;
  report.model_name = "human";
  report.setting = Setting::kHuman;
  SeedRun run;
  run.seed = options.seed;
  for (size_t i = 0; i < n; ++i) {
    std::vector<int> counts(items[i].options.size(), 0);
    for (int v : votes[i]) ++counts[static_cast<size_t>(v)];
    int final_answer = -1;
    for (size_t o = 0; o < counts.size(); ++o) {
      if (2 * counts[o] > options.annotators) final_answer = static_cast<int>(o);
    }
    if (final_answer < 0) {
      final_answer = session.Adjudicate(items[i], votes[i]);
      log({{"record_id", items[i].record_id}, {"adjudicated", final_answer}});
    }
    run.predictions.push_back(MakePrediction(items[i], final_answer));
  }
  report.runs.push_back(std::move(run));
  return report;
}

}  // namespace simprobe::eval
