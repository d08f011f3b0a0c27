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

#ifndef SIMPROBE_LM_MASKED_LM_H_
#define SIMPROBE_LM_MASKED_LM_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simprobe/common/token_span.h"
#include "simprobe/lm/autograd.h"
#include "simprobe/lm/tokenizer.h"
#include "simprobe/lm/transformer.h"

namespace simprobe::lm {

inline constexpr int kDefaultMaxLength = 128;

// Subtoken view of a surface sentence. Position 0 holds the sequence-start
// special token and the last position the separator.
struct AlignedEncoding {
  std::vector<int> subtoken_ids;
  // One range per surface token, in subtoken coordinates.
  std::vector<TokenSpan> word_to_subtoken;
  std::vector<int> mask_positions;
  int hidden_dim = 0;

  // Subtoken range covered by a surface-token span. Empty spans map to an
  // empty range.
  TokenSpan SubtokenRange(TokenSpan words) const;
};

// Boundary to a masked language model. Implementations are not required to
// be thread-safe; use one handle per worker.
class MaskedLanguageModel {
 public:
  virtual ~MaskedLanguageModel() = default;

  virtual std::string name() const = 0;
  virtual int hidden_dim() const = 0;
  virtual int vocab_size() const = 0;
  // Longest accepted input in subtokens, special tokens included.
  virtual int max_length() const = 0;
  virtual int unk_id() const = 0;

  // Tokenizes pre-split surface tokens. Each mask sentinel expands to
  // `mask_width` mask subtokens and each unknown sentinel to the unknown id.
  // Inputs longer than max_length() raise kOutOfRange.
  virtual AlignedEncoding Align(const std::vector<std::string> &tokens,
                                int mask_width = 1) const = 0;
  // Subtoken ids of `word` as it would appear mid-sentence.
  virtual std::vector<int> WordIds(std::string_view word) const = 0;

  // Hidden states (subtokens x hidden_dim) of `layer`; -1 is the last layer
  // and 0 the embedding output.
  virtual Matrix HiddenStates(const AlignedEncoding &encoding, int layer = -1) const = 0;
  // Vocabulary logits at each of `positions`, one row per position.
  virtual Matrix Logits(const AlignedEncoding &encoding,
                        const std::vector<int> &positions) const = 0;
  // Input embedding row for a vocabulary id.
  virtual Vector InputEmbedding(int id) const = 0;
  // Digest of every parameter the model holds.
  virtual std::string ParameterChecksum() const = 0;
};

// Shared alignment logic for tokenizer-backed models.
AlignedEncoding AlignTokens(const std::vector<std::string> &tokens, const Tokenizer &tokenizer,
                            int mask_width, int max_length, int hidden_dim);

// A BERT/RoBERTa masked LM evaluated natively.
class TransformerMaskedLM : public MaskedLanguageModel {
 public:
  TransformerMaskedLM(std::string name, TransformerConfig config,
                      std::unique_ptr<Tokenizer> tokenizer, int max_length = kDefaultMaxLength);

  // Loads config.json, model.safetensors and the tokenizer files.
  static std::unique_ptr<TransformerMaskedLM> Load(const std::filesystem::path &dir,
                                                   int max_length = kDefaultMaxLength);
  // Writes a directory that Load (and Hugging Face transformers) can read.
  void Save(const std::filesystem::path &dir) const;

  std::string name() const override { return name_; }
  int hidden_dim() const override { return encoder_.config().hidden_size; }
  int vocab_size() const override { return encoder_.config().vocab_size; }
  int max_length() const override { return max_length_; }
  int unk_id() const override { return tokenizer_->unk_id(); }
  AlignedEncoding Align(const std::vector<std::string> &tokens,
                        int mask_width = 1) const override;
  std::vector<int> WordIds(std::string_view word) const override;
  Matrix HiddenStates(const AlignedEncoding &encoding, int layer = -1) const override;
  Matrix Logits(const AlignedEncoding &encoding,
                const std::vector<int> &positions) const override;
  Vector InputEmbedding(int id) const override;
  std::string ParameterChecksum() const override;

  TransformerEncoder &encoder() { return encoder_; }
  const TransformerEncoder &encoder() const { return encoder_; }
  const Tokenizer &tokenizer() const { return *tokenizer_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  std::string name_;
  TransformerEncoder encoder_;
  std::unique_ptr<Tokenizer> tokenizer_;
  int max_length_;
};

// Resolves a checkpoint name: an existing directory is used as is, otherwise
// the name is looked up under $SIMPROBE_MODEL_CACHE.
std::filesystem::path ResolveCheckpoint(const std::string &name_or_path);

struct Encoded {
  AlignedEncoding encoding;
  Matrix hidden;  // subtokens x hidden_dim
};

Encoded Encode(const std::vector<std::string> &tokens, const MaskedLanguageModel &model,
               int layer = -1);

// Log-softmax over the vocabulary at the single mask sentinel.
Vector MaskLogprobs(const std::vector<std::string> &masked_tokens,
                    const MaskedLanguageModel &model);

// Mean of the hidden rows covering a surface-token span.
Vector PoolSpan(const AlignedEncoding &encoding, const Matrix &hidden, TokenSpan span);

// Static word vectors in word2vec or GloVe text format.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  static EmbeddingTable Load(const std::filesystem::path &path);

  void Add(const std::string &word, Vector vector);
  const Vector *Find(std::string_view word) const;
  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }

 private:
  std::unordered_map<std::string, Vector> vectors_;
  int dim_ = 0;
};

// Looks `word` up in `table` (exact, then lowercased), falling back to the
// model's input embedding of the word's first subtoken. Either source may be
// null.
Vector StaticEmbedding(std::string_view word, const EmbeddingTable *table,
                       const MaskedLanguageModel *model);

}  // namespace simprobe::lm

#endif  // SIMPROBE_LM_MASKED_LM_H_
