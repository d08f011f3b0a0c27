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

#ifndef SIMPROBE_LM_TRANSFORMER_H_
#define SIMPROBE_LM_TRANSFORMER_H_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "simprobe/common/random.h"
#include "simprobe/lm/autograd.h"
#include "simprobe/lm/safetensors.h"

namespace simprobe::lm {

// Hyperparameters of a BERT or RoBERTa encoder, read from a Hugging Face
// style config.json.
struct TransformerConfig {
  std::string model_type = "bert";  // "bert" or "roberta"
  int vocab_size = 0;
  int hidden_size = 768;
  int num_layers = 12;
  int num_heads = 12;
  int intermediate_size = 3072;
  int max_position_embeddings = 512;
  int type_vocab_size = 2;
  int pad_token_id = 0;
  double layer_norm_eps = 1e-12;
  double hidden_dropout = 0.1;
  double attention_dropout = 0.1;

  static TransformerConfig FromJson(const nlohmann::json &json);
  nlohmann::json ToJson() const;
  void Validate() const;

  // RoBERTa numbers positions from pad_token_id + 1.
  int position_offset() const;
  // Longest input, special tokens included, the position table allows.
  int max_sequence_length() const;
};

// Named trainable tensors in a stable order.
class ParameterStore {
 public:
  Var &Add(const std::string &name, Matrix value);
  Var &Get(const std::string &name);
  const Var &Get(const std::string &name) const;
  bool Contains(const std::string &name) const;

  std::vector<std::string> names() const;
  std::vector<Var> vars() const;
  size_t size() const { return params_.size(); }
  int64_t num_scalars() const;

  void ZeroGrad();
  void SetRequiresGrad(bool value);
  // SHA-256 over names, shapes and exact values.
  std::string Checksum() const;

  // Deep copy of values; gradients are not copied.
  std::map<std::string, Matrix> Snapshot() const;
  void Restore(const std::map<std::string, Matrix> &snapshot);

 private:
  std::map<std::string, Var> params_;
};

struct ForwardOptions {
  bool training = false;  // enables dropout
  Rng *rng = nullptr;     // required when training with dropout
};

// BERT/RoBERTa encoder with the masked-LM prediction head. Parameter names
// follow the BERT checkpoint layout without the model prefix.
class TransformerEncoder {
 public:
  explicit TransformerEncoder(TransformerConfig config);

  // Normal(0, 0.02) weights, unit LayerNorm gains, zero biases.
  void InitRandom(uint64_t seed);
  // Loads Hugging Face BERT/RoBERTa masked-LM tensors, mapping names.
  void LoadTensors(const TensorMap &tensors);
  // Tensors under Hugging Face names for `config().model_type`.
  TensorMap ExportTensors() const;

  // Hidden states for one unpadded sequence: element 0 is the embedding
  // output and element i the output of layer i.
  std::vector<Var> Forward(const std::vector<int> &ids, const ForwardOptions &options = {}) const;
  // Vocabulary logits for the given rows of `hidden`.
  Var LmLogits(const Var &hidden, const std::vector<int> &rows) const;

  const TransformerConfig &config() const { return config_; }
  ParameterStore &params() { return params_; }
  const ParameterStore &params() const { return params_; }

 private:
  Var Layer(int index, const Var &input, const ForwardOptions &options) const;
  const Var &P(const std::string &name) const { return params_.Get(name); }

  TransformerConfig config_;
  ParameterStore params_;
};

}  // namespace simprobe::lm

#endif  // SIMPROBE_LM_TRANSFORMER_H_
