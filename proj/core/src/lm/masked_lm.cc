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

#include "simprobe/lm/masked_lm.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::lm {

TokenSpan AlignedEncoding::SubtokenRange(TokenSpan words) const {
  if (words.empty()) return {};
  Require(words.begin >= 0 && words.end <= static_cast<int>(word_to_subtoken.size()),
          ErrorCode::kOutOfRange, "span outside the encoded sentence");
  return {word_to_subtoken[static_cast<size_t>(words.begin)].begin,
          word_to_subtoken[static_cast<size_t>(words.end - 1)].end};
}

AlignedEncoding AlignTokens(const std::vector<std::string> &tokens, const Tokenizer &tokenizer,
                            int mask_width, int max_length, int hidden_dim) {
  Require(mask_width >= 1, ErrorCode::kInvalidArgument, "mask_width must be >= 1");
  AlignedEncoding enc;
  enc.hidden_dim = hidden_dim;
  enc.subtoken_ids.push_back(tokenizer.cls_id());
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string &token = tokens[i];
    const int begin = static_cast<int>(enc.subtoken_ids.size());
    if (token == kMaskToken) {
      for (int k = 0; k < mask_width; ++k) {
        enc.mask_positions.push_back(static_cast<int>(enc.subtoken_ids.size()));
        enc.subtoken_ids.push_back(tokenizer.mask_id());
      }
    } else if (token == kUnkToken) {
      enc.subtoken_ids.push_back(tokenizer.unk_id());
    } else {
      std::vector<int> ids = tokenizer.EncodeWord(token, i > 0 && !AttachesLeft(token));
      if (ids.empty()) ids.push_back(tokenizer.unk_id());
      enc.subtoken_ids.insert(enc.subtoken_ids.end(), ids.begin(), ids.end());
    }
    enc.word_to_subtoken.push_back({begin, static_cast<int>(enc.subtoken_ids.size())});
  }
  enc.subtoken_ids.push_back(tokenizer.sep_id());
  const int length = static_cast<int>(enc.subtoken_ids.size());
  Require(length <= max_length, ErrorCode::kOutOfRange,
          "input of " + std::to_string(length) + " subtokens exceeds max length " +
              std::to_string(max_length));
  return enc;
}

TransformerMaskedLM::TransformerMaskedLM(std::string name, TransformerConfig config,
                                         std::unique_ptr<Tokenizer> tokenizer, int max_length)
    : name_(std::move(name)),
      encoder_(std::move(config)),
      tokenizer_(std::move(tokenizer)),
      max_length_(std::min(max_length, encoder_.config().max_sequence_length())) {
  Require(tokenizer_ != nullptr, ErrorCode::kInvalidArgument, "null tokenizer");
  Require(tokenizer_->vocab_size() <= encoder_.config().vocab_size,
          ErrorCode::kInvalidArgument,
          "tokenizer vocabulary (" + std::to_string(tokenizer_->vocab_size()) +
              ") larger than the embedding table (" +
              std::to_string(encoder_.config().vocab_size) + ")");
  Require(max_length_ >= 3, ErrorCode::kInvalidArgument, "max_length must be >= 3");
}

std::unique_ptr<TransformerMaskedLM> TransformerMaskedLM::Load(const std::filesystem::path &dir,
                                                               int max_length) {
  Require(std::filesystem::is_directory(dir), ErrorCode::kNotFound,
          "checkpoint directory " + dir.string() + " does not exist");
  const auto config_path = dir / "config.json";
  Require(std::filesystem::exists(config_path), ErrorCode::kNotFound,
          config_path.string() + " not found");
  const auto weights = dir / "model.safetensors";
  if (!std::filesystem::exists(weights)) {
    Fail(ErrorCode::kNotFound,
         weights.string() + " not found" +
             (std::filesystem::exists(dir / "pytorch_model.bin")
                  ? "; convert pytorch_model.bin to safetensors first"
                  : ""));
  }
  TransformerConfig config;
  try {
    config = TransformerConfig::FromJson(nlohmann::json::parse(ReadFile(config_path)));
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kDataLoss, config_path.string() + ": " + e.what());
  }
  std::filesystem::path normal = dir.lexically_normal();
  std::string name = normal.filename().string();
  if (name.empty()) name = normal.parent_path().filename().string();
  auto model = std::make_unique<TransformerMaskedLM>(name, config, LoadTokenizer(dir), max_length);
  model->encoder_.LoadTensors(ReadSafetensors(weights));
  return model;
}

void TransformerMaskedLM::Save(const std::filesystem::path &dir) const {
  std::filesystem::create_directories(dir);
  WriteFileAtomic(dir / "config.json", encoder_.config().ToJson().dump(2));
  WriteSafetensors(dir / "model.safetensors", encoder_.ExportTensors(), TensorDtype::kF32,
                   {{"format", "pt"}});
  tokenizer_->Save(dir);
}

AlignedEncoding TransformerMaskedLM::Align(const std::vector<std::string> &tokens,
                                           int mask_width) const {
  return AlignTokens(tokens, *tokenizer_, mask_width, max_length_, hidden_dim());
}

std::vector<int> TransformerMaskedLM::WordIds(std::string_view word) const {
  if (word == kMaskToken) return {tokenizer_->mask_id()};
  if (word == kUnkToken) return {tokenizer_->unk_id()};
  return tokenizer_->EncodeWord(word, true);
}

Matrix TransformerMaskedLM::HiddenStates(const AlignedEncoding &encoding, int layer) const {
  const int layers = encoder_.config().num_layers;
  const int index = layer < 0 ? layers + 1 + layer : layer;
  Require(index >= 0 && index <= layers, ErrorCode::kOutOfRange,
          "layer " + std::to_string(layer) + " outside [0, " + std::to_string(layers) + "]");
  NoGradGuard no_grad;
  std::vector<Var> states = encoder_.Forward(encoding.subtoken_ids);
  return states[static_cast<size_t>(index)].value();
}

Matrix TransformerMaskedLM::Logits(const AlignedEncoding &encoding,
                                   const std::vector<int> &positions) const {
  NoGradGuard no_grad;
  std::vector<Var> states = encoder_.Forward(encoding.subtoken_ids);
  return encoder_.LmLogits(states.back(), positions).value();
}

Vector TransformerMaskedLM::InputEmbedding(int id) const {
  const Matrix &table = encoder_.params().Get("embeddings.word_embeddings.weight").value();
  Require(id >= 0 && id < table.rows(), ErrorCode::kOutOfRange,
          "token id " + std::to_string(id) + " outside the embedding table");
  return table.row(id).transpose();
}

std::string TransformerMaskedLM::ParameterChecksum() const {
  return encoder_.params().Checksum();
}

std::filesystem::path ResolveCheckpoint(const std::string &name_or_path) {
  std::filesystem::path direct(name_or_path);
  if (std::filesystem::is_directory(direct)) return direct;
  std::vector<std::string> tried = {direct.string()};
  if (const char *cache = std::getenv("SIMPROBE_MODEL_CACHE"); cache && *cache) {
    std::filesystem::path cached = std::filesystem::path(cache) / name_or_path;
    if (std::filesystem::is_directory(cached)) return cached;
    tried.push_back(cached.string());
  }
  Fail(ErrorCode::kNotFound,
       "checkpoint \"" + name_or_path + "\" not found (tried " + Join(tried, ", ") + ")");
}

Encoded Encode(const std::vector<std::string> &tokens, const MaskedLanguageModel &model,
               int layer) {
  Encoded out;
  out.encoding = model.Align(tokens);
  out.hidden = model.HiddenStates(out.encoding, layer);
  return out;
}

Vector MaskLogprobs(const std::vector<std::string> &masked_tokens,
                    const MaskedLanguageModel &model) {
  const auto sentinels = std::count(masked_tokens.begin(), masked_tokens.end(), kMaskToken);
  Require(sentinels == 1, ErrorCode::kInvalidArgument,
          "expected exactly one mask sentinel, found " + std::to_string(sentinels));
  AlignedEncoding enc = model.Align(masked_tokens, 1);
  Matrix logits = model.Logits(enc, enc.mask_positions);
  Vector row = logits.row(0).transpose();
  const double max = row.maxCoeff();
  const double lse = max + std::log((row.array() - max).exp().sum());
  return (row.array() - lse).matrix();
}

Vector PoolSpan(const AlignedEncoding &encoding, const Matrix &hidden, TokenSpan span) {
  Require(!span.empty(), ErrorCode::kInvalidArgument, "cannot pool an empty span");
  TokenSpan range = encoding.SubtokenRange(span);
  Require(!range.empty() && range.end <= hidden.rows(), ErrorCode::kOutOfRange,
          "span maps outside the hidden states");
  return hidden.middleRows(range.begin, range.size()).colwise().mean().transpose();
}

EmbeddingTable EmbeddingTable::Load(const std::filesystem::path &path) {
  std::ifstream in(path);
  Require(in.good(), ErrorCode::kNotFound, "cannot open " + path.string());
  EmbeddingTable table;
  std::string line;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::string> fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      // word2vec text files start with "<count> <dim>".
      if (fields.size() == 2 && std::all_of(line.begin(), line.end(), [](char c) {
            return std::isdigit(static_cast<unsigned char>(c)) || std::isspace(static_cast<unsigned char>(c));
          })) {
        continue;
      }
    }
    Require(fields.size() >= 2, ErrorCode::kDataLoss,
            path.string() + ":" + std::to_string(line_no) + ": no vector");
    Vector v(static_cast<Eigen::Index>(fields.size() - 1));
    for (size_t k = 1; k < fields.size(); ++k) {
      char *end = nullptr;
      v(static_cast<Eigen::Index>(k - 1)) = std::strtod(fields[k].c_str(), &end);
      Require(end && *end == '\0', ErrorCode::kDataLoss,
              path.string() + ":" + std::to_string(line_no) + ": bad number \"" + fields[k] + "\"");
    }
    table.Add(fields[0], std::move(v));
  }
  return table;
}

void EmbeddingTable::Add(const std::string &word, Vector vector) {
  if (dim_ == 0) dim_ = static_cast<int>(vector.size());
  Require(vector.size() == dim_, ErrorCode::kInvalidArgument,
          "vector for \"" + word + "\" has dimension " + std::to_string(vector.size()) +
              ", table has " + std::to_string(dim_));
  vectors_.insert_or_assign(word, std::move(vector));
}

const Vector *EmbeddingTable::Find(std::string_view word) const {
  auto it = vectors_.find(std::string(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

Vector StaticEmbedding(std::string_view word, const EmbeddingTable *table,
                       const MaskedLanguageModel *model) {
  std::vector<std::string> tried;
  if (table != nullptr) {
    if (const Vector *v = table->Find(word)) return *v;
    tried.push_back("table");
    const std::string lower = ToLower(word);
    if (lower != word) {
      if (const Vector *v = table->Find(lower)) return *v;
      tried.push_back("table (lowercased)");
    }
  }
  if (model != nullptr) {
    std::vector<int> ids = model->WordIds(word);
    if (!ids.empty() && ids.front() != model->unk_id()) return model->InputEmbedding(ids.front());
    tried.push_back("model input embedding");
  }
  Fail(ErrorCode::kNotFound, "no vector for \"" + std::string(word) + "\" (tried " +
                                 (tried.empty() ? std::string("nothing") : Join(tried, ", ")) +
                                 ")");
}

}  // namespace simprobe::lm
