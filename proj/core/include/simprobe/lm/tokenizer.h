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

#ifndef SIMPROBE_LM_TOKENIZER_H_
#define SIMPROBE_LM_TOKENIZER_H_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace simprobe::lm {

// Subword tokenizer for one pre-split surface word at a time.
class Tokenizer {
 public:
  virtual ~Tokenizer() = default;

  // Subtoken ids for `word`. `space_before` says whether the word follows
  // whitespace in the detokenized sentence; WordPiece ignores it.
  virtual std::vector<int> EncodeWord(std::string_view word, bool space_before) const = 0;
  virtual std::string kind() const = 0;
  // Writes the vocabulary files into `dir`.
  virtual void Save(const std::filesystem::path &dir) const = 0;

  int vocab_size() const { return static_cast<int>(id_to_token_.size()); }
  std::optional<int> TokenId(std::string_view token) const;
  const std::string &IdToToken(int id) const;

  int cls_id() const { return cls_id_; }
  int sep_id() const { return sep_id_; }
  int pad_id() const { return pad_id_; }
  int mask_id() const { return mask_id_; }
  int unk_id() const { return unk_id_; }

 protected:
  void SetVocabulary(std::vector<std::string> tokens);
  void SetSpecials(std::string_view cls, std::string_view sep, std::string_view pad,
                   std::string_view mask, std::string_view unk);

  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
  int cls_id_ = 0, sep_id_ = 0, pad_id_ = 0, mask_id_ = 0, unk_id_ = 0;
};

// BERT-style basic tokenization followed by greedy longest-match WordPiece.
class WordPieceTokenizer : public Tokenizer {
 public:
  WordPieceTokenizer(std::vector<std::string> vocab, bool lower_case);
  static std::unique_ptr<WordPieceTokenizer> FromFile(const std::filesystem::path &vocab_txt,
                                                      bool lower_case);

  std::vector<int> EncodeWord(std::string_view word, bool space_before) const override;
  std::string kind() const override { return "wordpiece"; }
  void Save(const std::filesystem::path &dir) const override;
  bool lower_case() const { return lower_case_; }

 private:
  bool lower_case_;
};

// GPT-2 byte-level BPE as used by RoBERTa.
class ByteBpeTokenizer : public Tokenizer {
 public:
  ByteBpeTokenizer(std::map<std::string, int> vocab,
                   std::vector<std::pair<std::string, std::string>> merges);
  static std::unique_ptr<ByteBpeTokenizer> FromFiles(const std::filesystem::path &vocab_json,
                                                     const std::filesystem::path &merges_txt);

  std::vector<int> EncodeWord(std::string_view word, bool space_before) const override;
  std::string kind() const override { return "bpe"; }
  void Save(const std::filesystem::path &dir) const override;

 private:
  std::vector<std::string> Bpe(const std::string &piece) const;

  std::vector<std::pair<std::string, std::string>> merges_;
  std::map<std::pair<std::string, std::string>, int> merge_rank_;
  mutable std::unordered_map<std::string, std::vector<std::string>> cache_;
};

// Loads whichever tokenizer files `dir` holds: vocab.txt for WordPiece,
// vocab.json + merges.txt for byte-level BPE.
std::unique_ptr<Tokenizer> LoadTokenizer(const std::filesystem::path &dir);

// Whether a surface token is written without a preceding space when a
// sentence is detokenized (closing punctuation and clitics).
bool AttachesLeft(std::string_view token);

}  // namespace simprobe::lm

#endif  // SIMPROBE_LM_TOKENIZER_H_
