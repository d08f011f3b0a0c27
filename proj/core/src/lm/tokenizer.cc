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

#include "simprobe/lm/tokenizer.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"
#include "simprobe/common/text.h"

namespace simprobe::lm {
namespace {

constexpr size_t kMaxWordPieceChars = 100;

std::vector<char32_t> DecodeUtf8(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  for (size_t i = 0; i < text.size();) {
    const auto c = static_cast<unsigned char>(text[i]);
    int extra = c < 0x80 ? 0 : (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xe ? 2 : (c >> 3) == 0x1e ? 3 : -1;
    if (extra < 0 || i + static_cast<size_t>(extra) >= text.size()) {
      out.push_back(0xfffd);
      ++i;
      continue;
    }
    char32_t cp = extra == 0 ? c : (c & (0x3f >> extra));
    for (int k = 1; k <= extra; ++k) {
      cp = (cp << 6) | (static_cast<unsigned char>(text[i + k]) & 0x3f);
    }
    out.push_back(cp);
    i += static_cast<size_t>(extra) + 1;
  }
  return out;
}

void AppendUtf8(char32_t cp, std::string &out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

std::string ToUtf8(char32_t cp) {
  std::string s;
  AppendUtf8(cp, s);
  return s;
}

bool IsWhitespace(char32_t cp) {
  return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0xa0 ||
         cp == 0x3000 || (cp >= 0x2000 && cp <= 0x200a);
}

bool IsControl(char32_t cp) {
  if (cp == '\t' || cp == '\n' || cp == '\r') return false;
  return cp < 0x20 || cp == 0x7f || (cp >= 0x80 && cp < 0xa0);
}

bool IsPunctuation(char32_t cp) {
  if ((cp >= 33 && cp <= 47) || (cp >= 58 && cp <= 64) || (cp >= 91 && cp <= 96) ||
      (cp >= 123 && cp <= 126)) {
    return true;
  }
  return (cp >= 0xa1 && cp <= 0xbf && cp != 0xaa && cp != 0xb2 && cp != 0xb3 &&
          cp != 0xb5 && cp != 0xb9 && cp != 0xba && cp != 0xbc && cp != 0xbd &&
          cp != 0xbe) ||
         cp == 0xd7 || cp == 0xf7 || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205e) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011);
}

bool IsCjk(char32_t cp) {
  return (cp >= 0x4e00 && cp <= 0x9fff) || (cp >= 0x3400 && cp <= 0x4dbf) ||
         (cp >= 0x20000 && cp <= 0x2a6df) || (cp >= 0xf900 && cp <= 0xfaff) ||
         (cp >= 0x2f800 && cp <= 0x2fa1f);
}

char32_t Lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 32;
  if (cp >= 0xc0 && cp <= 0xde && cp != 0xd7) return cp + 32;
  if (cp >= 0x100 && cp <= 0x17f && cp != 0x130 && cp != 0x131 && cp != 0x138 &&
      cp != 0x149 && cp != 0x17f) {
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17e);
    if (odd_upper) return (cp % 2 == 1) ? cp + 1 : cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3a9 && cp != 0x3a2) return cp + 32;
  if (cp >= 0x410 && cp <= 0x42f) return cp + 32;
  if (cp >= 0x400 && cp <= 0x40f) return cp + 80;
  return cp;
}

// Base letter for precomposed Latin-1 lowercase letters; 0 if none.
char32_t StripAccent(char32_t cp) {
  static constexpr char kLatin1[] =
      "aaaaaaaceeeeiiii"  // e0-ef
      "dnooooo/ouuuuyty";  // f0-ff
  if (cp >= 0xe0 && cp <= 0xff && cp != 0xe6 && cp != 0xf0 && cp != 0xf7 &&
      cp != 0xf8 && cp != 0xfe) {
    return static_cast<char32_t>(kLatin1[cp - 0xe0]);
  }
  return cp;
}

bool IsCombiningMark(char32_t cp) { return cp >= 0x300 && cp <= 0x36f; }

// GPT-2 reversible byte to printable-codepoint table.
const std::array<char32_t, 256> &ByteEncoder() {
  static const std::array<char32_t, 256> table = [] {
    std::array<char32_t, 256> t{};
    std::vector<bool> direct(256, false);
    for (int b = '!'; b <= '~'; ++b) direct[b] = true;
    for (int b = 0xa1; b <= 0xac; ++b) direct[b] = true;
    for (int b = 0xae; b <= 0xff; ++b) direct[b] = true;
    char32_t next = 256;
    for (int b = 0; b < 256; ++b) t[b] = direct[b] ? static_cast<char32_t>(b) : next++;
    return t;
  }();
  return table;
}

enum class CharClass { kSpace, kLetter, kNumber, kOther };

CharClass Classify(char32_t cp) {
  if (IsWhitespace(cp)) return CharClass::kSpace;
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return CharClass::kLetter;
  if (cp >= '0' && cp <= '9') return CharClass::kNumber;
  if (cp < 0x80 || IsPunctuation(cp)) return CharClass::kOther;
  return CharClass::kLetter;
}

// GPT-2 pre-tokenization regex, restricted to the inputs a single surface
// word with an optional leading space can produce.
std::vector<std::string> PreTokenize(const std::vector<char32_t> &cps) {
  static const std::vector<std::u32string> kContractions = {U"'s", U"'t", U"'re", U"'ve",
                                                            U"'m", U"'ll", U"'d"};
  std::vector<std::string> pieces;
  size_t i = 0;
  while (i < cps.size()) {
    bool matched = false;
    for (const auto &c : kContractions) {
      if (i + c.size() <= cps.size() &&
          std::equal(c.begin(), c.end(), cps.begin() + static_cast<long>(i))) {
        std::string piece;
        for (char32_t cp : c) AppendUtf8(cp, piece);
        pieces.push_back(std::move(piece));
        i += c.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    std::string piece;
    size_t j = i;
    if (cps[j] == ' ' && j + 1 < cps.size() && Classify(cps[j + 1]) != CharClass::kSpace) {
      piece.push_back(' ');
      ++j;
    }
    const CharClass cls = Classify(cps[j]);
    while (j < cps.size() && Classify(cps[j]) == cls) {
      if (cls == CharClass::kOther && cps[j] == '\'' && j > i) {
        // A following contraction starts a new piece.
        bool contraction = false;
        for (const auto &c : kContractions) {
          if (j + c.size() <= cps.size() &&
              std::equal(c.begin(), c.end(), cps.begin() + static_cast<long>(j))) {
            contraction = true;
          }
        }
        if (contraction) break;
      }
      AppendUtf8(cps[j], piece);
      ++j;
    }
    pieces.push_back(std::move(piece));
    i = j;
  }
  return pieces;
}

}  // namespace

std::optional<int> Tokenizer::TokenId(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  if (it == token_to_id_.end()) return std::nullopt;
  return it->second;
}

const std::string &Tokenizer::IdToToken(int id) const {
  Require(id >= 0 && id < vocab_size(), ErrorCode::kOutOfRange,
          "token id " + std::to_string(id) + " outside vocabulary");
  return id_to_token_[static_cast<size_t>(id)];
}

void Tokenizer::SetVocabulary(std::vector<std::string> tokens) {
  id_to_token_ = std::move(tokens);
  token_to_id_.clear();
  token_to_id_.reserve(id_to_token_.size());
  for (size_t i = 0; i < id_to_token_.size(); ++i) {
    token_to_id_.emplace(id_to_token_[i], static_cast<int>(i));
  }
}

void Tokenizer::SetSpecials(std::string_view cls, std::string_view sep, std::string_view pad,
                            std::string_view mask, std::string_view unk) {
  auto lookup = [this](std::string_view name) {
    std::optional<int> id = TokenId(name);
    Require(id.has_value(), ErrorCode::kDataLoss,
            "vocabulary lacks special token " + std::string(name));
    return *id;
  };
  cls_id_ = lookup(cls);
  sep_id_ = lookup(sep);
  pad_id_ = lookup(pad);
  mask_id_ = lookup(mask);
  unk_id_ = lookup(unk);
}

WordPieceTokenizer::WordPieceTokenizer(std::vector<std::string> vocab, bool lower_case)
    : lower_case_(lower_case) {
  SetVocabulary(std::move(vocab));
  SetSpecials("[CLS]", "[SEP]", "[PAD]", "[MASK]", "[UNK]");
}

std::unique_ptr<WordPieceTokenizer> WordPieceTokenizer::FromFile(
    const std::filesystem::path &vocab_txt, bool lower_case) {
  std::vector<std::string> vocab;
  for (std::string &line : ReadLines(vocab_txt)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    vocab.push_back(std::move(line));
  }
  while (!vocab.empty() && vocab.back().empty()) vocab.pop_back();
  return std::make_unique<WordPieceTokenizer>(std::move(vocab), lower_case);
}

std::vector<int> WordPieceTokenizer::EncodeWord(std::string_view word, bool) const {
  // Basic tokenization: clean, optionally lowercase and strip accents, then
  // split punctuation and CJK characters into their own pieces.
  std::vector<std::vector<char32_t>> pieces(1);
  for (char32_t cp : DecodeUtf8(word)) {
    if (cp == 0 || cp == 0xfffd || IsControl(cp)) continue;
    if (lower_case_) {
      cp = StripAccent(Lower(cp));
      if (IsCombiningMark(cp)) continue;
    }
    if (IsWhitespace(cp)) {
      pieces.emplace_back();
    } else if (IsPunctuation(cp) || IsCjk(cp)) {
      pieces.push_back({cp});
      pieces.emplace_back();
    } else {
      pieces.back().push_back(cp);
    }
  }

  std::vector<int> ids;
  for (const auto &piece : pieces) {
    if (piece.empty()) continue;
    if (piece.size() > kMaxWordPieceChars) {
      ids.push_back(unk_id_);
      continue;
    }
    std::vector<int> sub;
    size_t start = 0;
    bool bad = false;
    while (start < piece.size()) {
      size_t end = piece.size();
      std::optional<int> found;
      while (start < end) {
        std::string candidate = start > 0 ? "##" : "";
        for (size_t k = start; k < end; ++k) AppendUtf8(piece[k], candidate);
        found = TokenId(candidate);
        if (found) break;
        --end;
      }
      if (!found) {
        bad = true;
        break;
      }
      sub.push_back(*found);
      start = end;
    }
    if (bad) {
      ids.push_back(unk_id_);
    } else {
      ids.insert(ids.end(), sub.begin(), sub.end());
    }
  }
  return ids;
}

void WordPieceTokenizer::Save(const std::filesystem::path &dir) const {
  std::string content;
  for (const std::string &token : id_to_token_) content += token + "\n";
  WriteFileAtomic(dir / "vocab.txt", content);
  nlohmann::json config = {{"do_lower_case", lower_case_},
                           {"tokenizer_class", "BertTokenizer"}};
  WriteFileAtomic(dir / "tokenizer_config.json", config.dump(2));
}

ByteBpeTokenizer::ByteBpeTokenizer(std::map<std::string, int> vocab,
                                   std::vector<std::pair<std::string, std::string>> merges)
    : merges_(std::move(merges)) {
  int max_id = -1;
  for (const auto &[token, id] : vocab) max_id = std::max(max_id, id);
  std::vector<std::string> tokens(static_cast<size_t>(max_id + 1));
  for (const auto &[token, id] : vocab) {
    Require(id >= 0, ErrorCode::kDataLoss, "negative id in vocab.json");
    tokens[static_cast<size_t>(id)] = token;
  }
  SetVocabulary(std::move(tokens));
  SetSpecials("<s>", "</s>", "<pad>", "<mask>", "<unk>");
  for (size_t i = 0; i < merges_.size(); ++i) {
    merge_rank_.emplace(merges_[i], static_cast<int>(i));
  }
}

std::unique_ptr<ByteBpeTokenizer> ByteBpeTokenizer::FromFiles(
    const std::filesystem::path &vocab_json, const std::filesystem::path &merges_txt) {
  std::map<std::string, int> vocab;
  try {
    vocab = nlohmann::json::parse(ReadFile(vocab_json)).get<std::map<std::string, int>>();
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kDataLoss, vocab_json.string() + ": " + e.what());
  }
  std::vector<std::pair<std::string, std::string>> merges;
  for (const std::string &line : ReadLines(merges_txt)) {
    if (line.empty() || StartsWith(line, "#version")) continue;
    std::vector<std::string> parts = SplitWhitespace(line);
    Require(parts.size() == 2, ErrorCode::kDataLoss, "bad merge line: " + line);
    merges.emplace_back(parts[0], parts[1]);
  }
  return std::make_unique<ByteBpeTokenizer>(std::move(vocab), std::move(merges));
}

std::vector<std::string> ByteBpeTokenizer::Bpe(const std::string &piece) const {
  if (auto it = cache_.find(piece); it != cache_.end()) return it->second;
  std::vector<std::string> symbols;
  for (char32_t cp : DecodeUtf8(piece)) symbols.push_back(ToUtf8(cp));
  while (symbols.size() > 1) {
    int best_rank = std::numeric_limits<int>::max();
    std::pair<std::string, std::string> best;
    for (size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = merge_rank_.find({symbols[i], symbols[i + 1]});
      if (it != merge_rank_.end() && it->second < best_rank) {
        best_rank = it->second;
        best = it->first;
      }
    }
    if (best_rank == std::numeric_limits<int>::max()) break;
    std::vector<std::string> merged;
    merged.reserve(symbols.size());
    for (size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == best.first && symbols[i + 1] == best.second) {
        merged.push_back(best.first + best.second);
        i += 2;
      } else {
        merged.push_back(symbols[i]);
        ++i;
      }
    }
    symbols = std::move(merged);
  }
  cache_.emplace(piece, symbols);
  return symbols;
}

std::vector<int> ByteBpeTokenizer::EncodeWord(std::string_view word, bool space_before) const {
  std::string text = space_before ? " " : "";
  text += word;
  const auto &encoder = ByteEncoder();
  std::vector<int> ids;
  for (const std::string &piece : PreTokenize(DecodeUtf8(text))) {
    std::string mapped;
    for (unsigned char byte : piece) AppendUtf8(encoder[byte], mapped);
    for (const std::string &symbol : Bpe(mapped)) {
      ids.push_back(TokenId(symbol).value_or(unk_id_));
    }
  }
  return ids;
}

void ByteBpeTokenizer::Save(const std::filesystem::path &dir) const {
  nlohmann::json vocab = nlohmann::json::object();
  for (size_t i = 0; i < id_to_token_.size(); ++i) vocab[id_to_token_[i]] = i;
  WriteFileAtomic(dir / "vocab.json", vocab.dump());
  std::string merges = "#version: 0.2\n";
  for (const auto &[a, b] : merges_) merges += a + " " + b + "\n";
  WriteFileAtomic(dir / "merges.txt", merges);
  nlohmann::json config = {{"tokenizer_class", "RobertaTokenizer"}};
  WriteFileAtomic(dir / "tokenizer_config.json", config.dump(2));
}

std::unique_ptr<Tokenizer> LoadTokenizer(const std::filesystem::path &dir) {
  if (std::filesystem::exists(dir / "vocab.txt")) {
    bool lower_case = true;
    if (std::filesystem::exists(dir / "tokenizer_config.json")) {
      nlohmann::json config = nlohmann::json::parse(ReadFile(dir / "tokenizer_config.json"));
      lower_case = config.value("do_lower_case", true);
    }
    return WordPieceTokenizer::FromFile(dir / "vocab.txt", lower_case);
  }
  if (std::filesystem::exists(dir / "vocab.json") && std::filesystem::exists(dir / "merges.txt")) {
    return ByteBpeTokenizer::FromFiles(dir / "vocab.json", dir / "merges.txt");
  }
  Fail(ErrorCode::kNotFound,
       dir.string() + ": no vocab.txt or vocab.json + merges.txt tokenizer files");
}

bool AttachesLeft(std::string_view token) {
  static const std::vector<std::string_view> kClosing = {".", ",", "!", "?", ";", ":",
                                                         ")", "]", "}", "%", "...", "n't"};
  if (std::find(kClosing.begin(), kClosing.end(), token) != kClosing.end()) return true;
  return token.size() > 1 && token.front() == '\'';
}

}  // namespace simprobe::lm
