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

#include "simprobe/distractors/confirm.h"

#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "simprobe/common/error.h"
#include "simprobe/common/text.h"

namespace simprobe::distractors {

char JudgmentCode(Judgment judgment) {
  switch (judgment) {
    case Judgment::kTrueNegative: return 'y';
    case Judgment::kNotNegative: return 'n';
    case Judgment::kUncertain: return 'u';
  }
  return 'u';
}

Judgment ParseJudgment(char code) {
  switch (code) {
    case 'y': case 'Y': return Judgment::kTrueNegative;
    case 'n': case 'N': return Judgment::kNotNegative;
    case 'u': case 'U': return Judgment::kUncertain;
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("unknown judgment '") + code + "'");
}

Judgment StreamSession::Judge(int annotator, const DraftProbe &draft,
                              const DistractorCandidate &candidate) {
  std::vector<std::string> masked = draft.record.tokens;
  const TokenSpan p = draft.record.property;
  masked.erase(masked.begin() + p.begin, masked.begin() + p.end);
  masked.insert(masked.begin() + p.begin, std::string(kMaskToken));
  out_ << "\n[" << draft.record.id << "] " << Join(masked, " ") << "\n"
       << "  gold: " << draft.record.PropertyText() << "\n"
       << "  candidate: " << candidate.word << " (" << OriginName(candidate.origin) << ")\n";
  std::string line;
  for (;;) {
    out_ << "annotator " << annotator + 1
         << ": is the candidate wrong in this sentence? [y/n/u] " << std::flush;
    if (!std::getline(in_, line)) {
      throw Error(ErrorCode::kAborted, "annotation input ended");
    }
    const std::string answer = ToLower(Trim(line));
    if (answer.size() == 1 && (answer == "y" || answer == "n" || answer == "u")) {
      return ParseJudgment(answer[0]);
    }
    out_ << "please answer y, n or u\n";
  }
}

namespace {

class Transcript {
 public:
  explicit Transcript(const std::optional<std::filesystem::path> &path) {
    if (!path) return;
    if (path->has_parent_path()) std::filesystem::create_directories(path->parent_path());
    out_.open(*path, std::ios::app);
    Require(out_.good(), ErrorCode::kNotFound, "cannot open transcript " + path->string());
  }
  void Write(const nlohmann::json &row) {
    if (out_.is_open()) out_ << row.dump() << '\n' << std::flush;
  }

 private:
  std::ofstream out_;
};

}  // namespace

ConfirmResult ConfirmDistractors(std::vector<DraftProbe> drafts, AnnotationSession &session,
                                 const ConfirmOptions &options) {
  Require(options.annotators >= 1 && options.threshold >= 1 &&
              options.threshold <= options.annotators,
          ErrorCode::kInvalidArgument, "threshold must lie in [1, annotators]");
  Transcript transcript(options.transcript);
  ConfirmResult result;
  for (DraftProbe &draft : drafts) {
    bool exhausted = false;
    for (size_t slot = 0; slot < draft.selected.size() && !exhausted; ++slot) {
      while (draft.selected[slot].human_label != HumanLabel::kTrueNegative) {
        DistractorCandidate &c = draft.selected[slot];
        int objections = 0;
        for (int a = 0; a < options.annotators; ++a) {
          const Judgment j = session.Judge(a, draft, c);
          if (j != Judgment::kTrueNegative) ++objections;
          transcript.Write({{"record_id", draft.record.id},
                            {"candidate", c.word},
                            {"annotator", a},
                            {"judgment", std::string(1, JudgmentCode(j))}});
        }
        const bool rejected = objections >= options.threshold;
        c.human_label = rejected ? HumanLabel::kRejected : HumanLabel::kTrueNegative;
        std::string decision = rejected ? "replaced" : "kept";
        if (rejected && draft.reserve.empty()) decision = "exhausted";
        transcript.Write({{"record_id", draft.record.id},
                          {"candidate", c.word},
                          {"objections", objections},
                          {"decision", decision}});
        if (!rejected) break;
        if (draft.reserve.empty()) {
          exhausted = true;
          break;
        }
        draft.selected[slot] = std::move(draft.reserve.front());
        draft.reserve.erase(draft.reserve.begin());
      }
    }
    if (exhausted) {
      result.excluded.push_back({draft.record.id, "replacement pool exhausted"});
    } else {
      result.confirmed.push_back(std::move(draft));
    }
  }
  return result;
}

}  // namespace simprobe::distractors
