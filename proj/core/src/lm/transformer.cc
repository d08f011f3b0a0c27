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

#include "simprobe/lm/transformer.h"

#include <cmath>
#include <set>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::lm {
namespace {

Var MaybeDropout(const Var &x, double rate, const ForwardOptions &options) {
  if (!options.training || rate <= 0.0) return x;
  return Dropout(x, rate, *options.rng);
}

std::string LayerName(int i, const std::string &suffix) {
  return "encoder.layer." + std::to_string(i) + "." + suffix;
}

// Maps a Hugging Face tensor name onto the internal layout; empty when the
// tensor is not used (pooler, next-sentence head, buffers, tied decoder).
std::string CanonicalName(std::string name) {
  for (const char *prefix : {"bert.", "roberta."}) {
    if (StartsWith(name, prefix)) name = name.substr(std::string(prefix).size());
  }
  if (EndsWith(name, ".gamma")) name = name.substr(0, name.size() - 6) + ".weight";
  if (EndsWith(name, ".beta")) name = name.substr(0, name.size() - 5) + ".bias";
  if (StartsWith(name, "lm_head.dense.")) {
    return "cls.predictions.transform.dense." + name.substr(14);
  }
  if (StartsWith(name, "lm_head.layer_norm.")) {
    return "cls.predictions.transform.LayerNorm." + name.substr(19);
  }
  if (name == "lm_head.bias" || name == "lm_head.decoder.bias" ||
      name == "cls.predictions.decoder.bias") {
    return "cls.predictions.bias";
  }
  if (StartsWith(name, "embeddings.") || StartsWith(name, "encoder.") ||
      StartsWith(name, "cls.predictions.transform.") || name == "cls.predictions.bias") {
    if (name == "embeddings.position_ids" || name == "embeddings.token_type_ids") return "";
    return name;
  }
  return "";
}

std::string ExportName(const std::string &name, const std::string &model_type) {
  if (model_type == "roberta") {
    if (StartsWith(name, "cls.predictions.transform.dense.")) {
      return "lm_head.dense." + name.substr(32);
    }
    if (StartsWith(name, "cls.predictions.transform.LayerNorm.")) {
      return "lm_head.layer_norm." + name.substr(36);
    }
    if (name == "cls.predictions.bias") return "lm_head.bias";
    return "roberta." + name;
  }
  if (StartsWith(name, "cls.")) return name;
  return "bert." + name;
}

bool IsGain(const std::string &name) {
  return EndsWith(name, "LayerNorm.weight");
}

}  // namespace

TransformerConfig TransformerConfig::FromJson(const nlohmann::json &json) {
  TransformerConfig c;
  c.model_type = json.value("model_type", std::string("bert"));
  c.vocab_size = json.at("vocab_size").get<int>();
  c.hidden_size = json.value("hidden_size", c.hidden_size);
  c.num_layers = json.value("num_hidden_layers", c.num_layers);
  c.num_heads = json.value("num_attention_heads", c.num_heads);
  c.intermediate_size = json.value("intermediate_size", c.intermediate_size);
  c.max_position_embeddings = json.value("max_position_embeddings", c.max_position_embeddings);
  c.type_vocab_size = json.value("type_vocab_size", c.type_vocab_size);
  c.pad_token_id = json.value("pad_token_id", c.model_type == "roberta" ? 1 : 0);
  c.layer_norm_eps = json.value("layer_norm_eps", c.layer_norm_eps);
  c.hidden_dropout = json.value("hidden_dropout_prob", c.hidden_dropout);
  c.attention_dropout = json.value("attention_probs_dropout_prob", c.attention_dropout);
  const std::string act = json.value("hidden_act", std::string("gelu"));
  Require(act == "gelu", ErrorCode::kInvalidArgument,
          "unsupported hidden_act \"" + act + "\" (only gelu)");
  c.Validate();
  return c;
}

nlohmann::json TransformerConfig::ToJson() const {
  const bool roberta = model_type == "roberta";
  return {
      {"architectures", {roberta ? "RobertaForMaskedLM" : "BertForMaskedLM"}},
      {"model_type", model_type},
      {"vocab_size", vocab_size},
      {"hidden_size", hidden_size},
      {"num_hidden_layers", num_layers},
      {"num_attention_heads", num_heads},
      {"intermediate_size", intermediate_size},
      {"max_position_embeddings", max_position_embeddings},
      {"type_vocab_size", type_vocab_size},
      {"pad_token_id", pad_token_id},
      {"layer_norm_eps", layer_norm_eps},
      {"hidden_dropout_prob", hidden_dropout},
      {"attention_probs_dropout_prob", attention_dropout},
      {"hidden_act", "gelu"},
      {"tie_word_embeddings", true},
  };
}

void TransformerConfig::Validate() const {
  Require(model_type == "bert" || model_type == "roberta", ErrorCode::kInvalidArgument,
          "unsupported model_type \"" + model_type + "\"");
  Require(vocab_size > 0 && hidden_size > 0 && num_layers > 0 && num_heads > 0 &&
              intermediate_size > 0 && type_vocab_size > 0,
          ErrorCode::kInvalidArgument, "transformer dimensions must be positive");
  Require(hidden_size % num_heads == 0, ErrorCode::kInvalidArgument,
          "hidden_size must be divisible by num_attention_heads");
  Require(max_sequence_length() >= 3, ErrorCode::kInvalidArgument,
          "position table too small");
}

int TransformerConfig::position_offset() const {
  return model_type == "roberta" ? pad_token_id + 1 : 0;
}

int TransformerConfig::max_sequence_length() const {
  return max_position_embeddings - position_offset();
}

Var &ParameterStore::Add(const std::string &name, Matrix value) {
  auto [it, inserted] = params_.insert_or_assign(name, Var(std::move(value), true));
  return it->second;
}

Var &ParameterStore::Get(const std::string &name) {
  auto it = params_.find(name);
  Require(it != params_.end(), ErrorCode::kNotFound, "no parameter " + name);
  return it->second;
}

const Var &ParameterStore::Get(const std::string &name) const {
  auto it = params_.find(name);
  Require(it != params_.end(), ErrorCode::kNotFound, "no parameter " + name);
  return it->second;
}

bool ParameterStore::Contains(const std::string &name) const {
  return params_.count(name) > 0;
}

std::vector<std::string> ParameterStore::names() const {
  std::vector<std::string> out;
  for (const auto &[name, var] : params_) out.push_back(name);
  return out;
}

std::vector<Var> ParameterStore::vars() const {
  std::vector<Var> out;
  for (const auto &[name, var] : params_) out.push_back(var);
  return out;
}

int64_t ParameterStore::num_scalars() const {
  int64_t n = 0;
  for (const auto &[name, var] : params_) n += var.value().size();
  return n;
}

void ParameterStore::ZeroGrad() {
  for (auto &[name, var] : params_) var.ZeroGrad();
}

void ParameterStore::SetRequiresGrad(bool value) {
  for (auto &[name, var] : params_) var.set_requires_grad(value);
}

std::string ParameterStore::Checksum() const {
  Sha256 hash;
  for (const auto &[name, var] : params_) {
    hash.Update(name);
    const int64_t shape[2] = {var.rows(), var.cols()};
    hash.Update(shape, sizeof(shape));
    hash.Update(var.value().data(), static_cast<size_t>(var.value().size()) * sizeof(double));
  }
  return hash.HexDigest();
}

std::map<std::string, Matrix> ParameterStore::Snapshot() const {
  std::map<std::string, Matrix> out;
  for (const auto &[name, var] : params_) out.emplace(name, var.value());
  return out;
}

void ParameterStore::Restore(const std::map<std::string, Matrix> &snapshot) {
  for (auto &[name, var] : params_) {
    auto it = snapshot.find(name);
    Require(it != snapshot.end(), ErrorCode::kNotFound, "snapshot lacks " + name);
    var.mutable_value() = it->second;
  }
}

TransformerEncoder::TransformerEncoder(TransformerConfig config) : config_(std::move(config)) {
  config_.Validate();
  const int d = config_.hidden_size;
  auto add = [this](const std::string &name, Eigen::Index rows, Eigen::Index cols) {
    params_.Add(name, Matrix::Zero(rows, cols));
  };
  add("embeddings.word_embeddings.weight", config_.vocab_size, d);
  add("embeddings.position_embeddings.weight", config_.max_position_embeddings, d);
  add("embeddings.token_type_embeddings.weight", config_.type_vocab_size, d);
  add("embeddings.LayerNorm.weight", 1, d);
  add("embeddings.LayerNorm.bias", 1, d);
  for (int i = 0; i < config_.num_layers; ++i) {
    for (const char *proj : {"query", "key", "value"}) {
      add(LayerName(i, std::string("attention.self.") + proj + ".weight"), d, d);
      add(LayerName(i, std::string("attention.self.") + proj + ".bias"), 1, d);
    }
    add(LayerName(i, "attention.output.dense.weight"), d, d);
    add(LayerName(i, "attention.output.dense.bias"), 1, d);
    add(LayerName(i, "attention.output.LayerNorm.weight"), 1, d);
    add(LayerName(i, "attention.output.LayerNorm.bias"), 1, d);
    add(LayerName(i, "intermediate.dense.weight"), config_.intermediate_size, d);
    add(LayerName(i, "intermediate.dense.bias"), 1, config_.intermediate_size);
    add(LayerName(i, "output.dense.weight"), d, config_.intermediate_size);
    add(LayerName(i, "output.dense.bias"), 1, d);
    add(LayerName(i, "output.LayerNorm.weight"), 1, d);
    add(LayerName(i, "output.LayerNorm.bias"), 1, d);
  }
  add("cls.predictions.transform.dense.weight", d, d);
  add("cls.predictions.transform.dense.bias", 1, d);
  add("cls.predictions.transform.LayerNorm.weight", 1, d);
  add("cls.predictions.transform.LayerNorm.bias", 1, d);
  add("cls.predictions.bias", 1, config_.vocab_size);
  InitRandom(0);
}

void TransformerEncoder::InitRandom(uint64_t seed) {
  Rng rng(seed);
  for (const std::string &name : params_.names()) {
    Matrix &m = params_.Get(name).mutable_value();
    if (IsGain(name)) {
      m.setOnes();
    } else if (EndsWith(name, ".bias")) {
      m.setZero();
    } else {
      for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = 0.02 * StandardNormal(rng);
    }
  }
  if (config_.model_type == "roberta") {
    params_.Get("embeddings.word_embeddings.weight").mutable_value().row(config_.pad_token_id).setZero();
  }
}

void TransformerEncoder::LoadTensors(const TensorMap &tensors) {
  std::set<std::string> loaded;
  for (const auto &[hf_name, tensor] : tensors) {
    const std::string name = CanonicalName(hf_name);
    if (name.empty() || !params_.Contains(name)) continue;
    Matrix &target = params_.Get(name).mutable_value();
    const bool vector = tensor.shape.size() == 1;
    const int64_t rows = vector ? 1 : tensor.shape.at(0);
    const int64_t cols = vector ? tensor.shape.at(0) : tensor.shape.at(1);
    Require(tensor.shape.size() <= 2 && rows == target.rows() && cols == target.cols(),
            ErrorCode::kDataLoss,
            hf_name + ": shape does not match the configured model (expected " +
                std::to_string(target.rows()) + "x" + std::to_string(target.cols()) + ")");
    target = Eigen::Map<const Matrix>(tensor.data.data(), rows, cols);
    loaded.insert(name);
  }
  std::vector<std::string> missing;
  for (const std::string &name : params_.names()) {
    if (!loaded.count(name)) missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string list = missing.front();
    for (size_t i = 1; i < missing.size() && i < 5; ++i) list += ", " + missing[i];
    if (missing.size() > 5) list += ", ...";
    Fail(ErrorCode::kDataLoss,
         "checkpoint lacks " + std::to_string(missing.size()) + " tensors: " + list);
  }
}

TensorMap TransformerEncoder::ExportTensors() const {
  TensorMap out;
  for (const std::string &name : params_.names()) {
    const Matrix &m = params_.Get(name).value();
    Tensor t;
    if (m.rows() == 1 && (EndsWith(name, ".bias") || IsGain(name))) {
      t.shape = {m.cols()};
    } else {
      t.shape = {m.rows(), m.cols()};
    }
    t.data.assign(m.data(), m.data() + m.size());
    out.emplace(ExportName(name, config_.model_type), std::move(t));
  }
  const std::string decoder =
      config_.model_type == "roberta" ? "lm_head.decoder.weight" : "cls.predictions.decoder.weight";
  out.emplace(decoder, out.at(ExportName("embeddings.word_embeddings.weight", config_.model_type)));
  return out;
}

std::vector<Var> TransformerEncoder::Forward(const std::vector<int> &ids,
                                             const ForwardOptions &options) const {
  const int n = static_cast<int>(ids.size());
  Require(n > 0, ErrorCode::kInvalidArgument, "empty input sequence");
  Require(n <= config_.max_sequence_length(), ErrorCode::kOutOfRange,
          "sequence of " + std::to_string(n) + " subtokens exceeds the position table (" +
              std::to_string(config_.max_sequence_length()) + ")");
  Require(!options.training || options.rng != nullptr ||
              (config_.hidden_dropout == 0.0 && config_.attention_dropout == 0.0),
          ErrorCode::kInvalidArgument, "training forward needs an rng for dropout");
  std::vector<int> positions(ids.size()), types(ids.size(), 0);
  for (int i = 0; i < n; ++i) positions[i] = config_.position_offset() + i;

  Var h = Add(Add(GatherRows(P("embeddings.word_embeddings.weight"), ids),
                  GatherRows(P("embeddings.position_embeddings.weight"), positions)),
              GatherRows(P("embeddings.token_type_embeddings.weight"), types));
  h = LayerNorm(h, P("embeddings.LayerNorm.weight"), P("embeddings.LayerNorm.bias"),
                config_.layer_norm_eps);
  h = MaybeDropout(h, config_.hidden_dropout, options);

  std::vector<Var> states;
  states.reserve(static_cast<size_t>(config_.num_layers) + 1);
  states.push_back(h);
  for (int i = 0; i < config_.num_layers; ++i) {
    h = Layer(i, h, options);
    states.push_back(h);
  }
  return states;
}

Var TransformerEncoder::Layer(int i, const Var &input, const ForwardOptions &options) const {
  const int heads = config_.num_heads;
  const int dh = config_.hidden_size / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  auto lin = [&](const Var &x, const std::string &prefix) {
    return Linear(x, P(LayerName(i, prefix + ".weight")), P(LayerName(i, prefix + ".bias")));
  };
  Var q = lin(input, "attention.self.query");
  Var k = lin(input, "attention.self.key");
  Var v = lin(input, "attention.self.value");
  std::vector<Var> contexts;
  contexts.reserve(static_cast<size_t>(heads));
  for (int head = 0; head < heads; ++head) {
    Var qh = SliceCols(q, head * dh, dh);
    Var kh = SliceCols(k, head * dh, dh);
    Var vh = SliceCols(v, head * dh, dh);
    Var probs = SoftmaxRows(Scale(MatMulT(qh, kh), scale));
    probs = MaybeDropout(probs, config_.attention_dropout, options);
    contexts.push_back(MatMul(probs, vh));
  }
  Var attn = lin(heads == 1 ? contexts.front() : ConcatCols(contexts), "attention.output.dense");
  attn = MaybeDropout(attn, config_.hidden_dropout, options);
  Var h1 = LayerNorm(Add(attn, input), P(LayerName(i, "attention.output.LayerNorm.weight")),
                     P(LayerName(i, "attention.output.LayerNorm.bias")), config_.layer_norm_eps);
  Var ff = lin(Gelu(lin(h1, "intermediate.dense")), "output.dense");
  ff = MaybeDropout(ff, config_.hidden_dropout, options);
  return LayerNorm(Add(ff, h1), P(LayerName(i, "output.LayerNorm.weight")),
                   P(LayerName(i, "output.LayerNorm.bias")), config_.layer_norm_eps);
}

Var TransformerEncoder::LmLogits(const Var &hidden, const std::vector<int> &rows) const {
  Var x = GatherRows(hidden, rows);
  x = Gelu(Linear(x, P("cls.predictions.transform.dense.weight"),
                  P("cls.predictions.transform.dense.bias")));
  x = LayerNorm(x, P("cls.predictions.transform.LayerNorm.weight"),
                P("cls.predictions.transform.LayerNorm.bias"), config_.layer_norm_eps);
  return AddRow(MatMulT(x, P("embeddings.word_embeddings.weight")), P("cls.predictions.bias"));
}

}  // namespace simprobe::lm
