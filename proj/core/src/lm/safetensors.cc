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

#include "simprobe/lm/safetensors.h"

#include <bit>
#include <cmath>
#include <limits>
#include <cstring>

#include <nlohmann/json.hpp>

#include "simprobe/common/error.h"
#include "simprobe/common/io.h"

namespace simprobe::lm {
namespace {

static_assert(std::endian::native == std::endian::little,
              "safetensors I/O assumes a little-endian host");

size_t DtypeSize(const std::string &dtype) {
  if (dtype == "F16" || dtype == "BF16") return 2;
  if (dtype == "F32") return 4;
  if (dtype == "F64") return 8;
  Fail(ErrorCode::kDataLoss, "unsupported safetensors dtype " + dtype);
}

double HalfToDouble(uint16_t h) {
  const int sign = (h >> 15) & 1;
  const int exponent = (h >> 10) & 0x1f;
  const int mantissa = h & 0x3ff;
  double value;
  if (exponent == 0) {
    value = std::ldexp(static_cast<double>(mantissa), -24);
  } else if (exponent == 31) {
    value = mantissa == 0 ? std::numeric_limits<double>::infinity()
                          : std::numeric_limits<double>::quiet_NaN();
  } else {
    value = std::ldexp(static_cast<double>(mantissa + 1024), exponent - 25);
  }
  return sign ? -value : value;
}

uint16_t FloatToHalf(float f) {
  // Round-to-nearest-even conversion through the float bit pattern.
  const uint32_t x = std::bit_cast<uint32_t>(f);
  const uint32_t sign = (x >> 16) & 0x8000;
  const int exponent = static_cast<int>((x >> 23) & 0xff) - 127 + 15;
  uint32_t mantissa = x & 0x7fffff;
  if (((x >> 23) & 0xff) == 0xff) {
    return static_cast<uint16_t>(sign | 0x7c00 | (mantissa ? 0x200 : 0));
  }
  if (exponent >= 31) return static_cast<uint16_t>(sign | 0x7c00);
  if (exponent <= 0) {
    if (exponent < -10) return static_cast<uint16_t>(sign);
    mantissa |= 0x800000;
    const int shift = 14 - exponent;
    uint32_t half = mantissa >> shift;
    const uint32_t rest = mantissa & ((1u << shift) - 1);
    const uint32_t midpoint = 1u << (shift - 1);
    if (rest > midpoint || (rest == midpoint && (half & 1))) ++half;
    return static_cast<uint16_t>(sign | half);
  }
  uint32_t half = sign | (static_cast<uint32_t>(exponent) << 10) | (mantissa >> 13);
  const uint32_t rest = mantissa & 0x1fff;
  if (rest > 0x1000 || (rest == 0x1000 && (half & 1))) ++half;
  return static_cast<uint16_t>(half);
}

double Decode(const std::string &dtype, const char *p) {
  if (dtype == "F32") {
    float f;
    std::memcpy(&f, p, 4);
    return f;
  }
  if (dtype == "F64") {
    double d;
    std::memcpy(&d, p, 8);
    return d;
  }
  uint16_t h;
  std::memcpy(&h, p, 2);
  if (dtype == "F16") return HalfToDouble(h);
  return std::bit_cast<float>(static_cast<uint32_t>(h) << 16);
}

void Encode(TensorDtype dtype, double value, std::string &out) {
  switch (dtype) {
    case TensorDtype::kF64:
      out.append(reinterpret_cast<const char *>(&value), 8);
      return;
    case TensorDtype::kF32: {
      float f = static_cast<float>(value);
      out.append(reinterpret_cast<const char *>(&f), 4);
      return;
    }
    case TensorDtype::kF16: {
      uint16_t h = FloatToHalf(static_cast<float>(value));
      out.append(reinterpret_cast<const char *>(&h), 2);
      return;
    }
    case TensorDtype::kBF16: {
      uint32_t bits = std::bit_cast<uint32_t>(static_cast<float>(value));
      bits += 0x7fff + ((bits >> 16) & 1);
      uint16_t h = static_cast<uint16_t>(bits >> 16);
      out.append(reinterpret_cast<const char *>(&h), 2);
      return;
    }
  }
}

const char *DtypeName(TensorDtype dtype) {
  switch (dtype) {
    case TensorDtype::kF16: return "F16";
    case TensorDtype::kBF16: return "BF16";
    case TensorDtype::kF32: return "F32";
    case TensorDtype::kF64: return "F64";
  }
  return "F32";
}

size_t DtypeSize(TensorDtype dtype) { return DtypeSize(std::string(DtypeName(dtype))); }

}  // namespace

int64_t Tensor::numel() const {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return n;
}

TensorMap ReadSafetensors(const std::filesystem::path &path) {
  const std::string bytes = ReadFile(path);
  Require(bytes.size() >= 8, ErrorCode::kDataLoss, path.string() + ": truncated header");
  uint64_t header_size;
  std::memcpy(&header_size, bytes.data(), 8);
  Require(header_size <= bytes.size() - 8, ErrorCode::kDataLoss,
          path.string() + ": header length exceeds file size");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(bytes.substr(8, header_size));
  } catch (const nlohmann::json::exception &e) {
    Fail(ErrorCode::kDataLoss, path.string() + ": bad header: " + e.what());
  }
  const char *data = bytes.data() + 8 + header_size;
  const size_t data_size = bytes.size() - 8 - header_size;

  TensorMap out;
  for (const auto &[name, info] : header.items()) {
    if (name == "__metadata__") continue;
    const std::string dtype = info.at("dtype").get<std::string>();
    const size_t width = DtypeSize(dtype);
    Tensor tensor;
    tensor.shape = info.at("shape").get<std::vector<int64_t>>();
    const auto offsets = info.at("data_offsets").get<std::vector<size_t>>();
    Require(offsets.size() == 2 && offsets[0] <= offsets[1] && offsets[1] <= data_size,
            ErrorCode::kDataLoss, path.string() + ": bad offsets for " + name);
    const size_t count = static_cast<size_t>(tensor.numel());
    Require((offsets[1] - offsets[0]) == count * width, ErrorCode::kDataLoss,
            path.string() + ": size mismatch for " + name);
    tensor.data.resize(count);
    for (size_t i = 0; i < count; ++i) {
      tensor.data[i] = Decode(dtype, data + offsets[0] + i * width);
    }
    out.emplace(name, std::move(tensor));
  }
  return out;
}

void WriteSafetensors(const std::filesystem::path &path, const TensorMap &tensors,
                      TensorDtype dtype,
                      const std::map<std::string, std::string> &metadata) {
  nlohmann::json header = nlohmann::json::object();
  if (!metadata.empty()) header["__metadata__"] = metadata;
  std::string payload;
  const size_t width = DtypeSize(dtype);
  for (const auto &[name, tensor] : tensors) {
    Require(static_cast<int64_t>(tensor.data.size()) == tensor.numel(),
            ErrorCode::kInvalidArgument, "tensor " + name + " data/shape mismatch");
    const size_t begin = payload.size();
    payload.reserve(begin + tensor.data.size() * width);
    for (double v : tensor.data) Encode(dtype, v, payload);
    header[name] = {{"dtype", DtypeName(dtype)},
                    {"shape", tensor.shape},
                    {"data_offsets", {begin, payload.size()}}};
  }
  std::string head = header.dump();
  // Pad so the data section starts 8-byte aligned.
  while ((head.size() % 8) != 0) head.push_back(' ');
  std::string file;
  file.reserve(8 + head.size() + payload.size());
  const uint64_t n = head.size();
  file.append(reinterpret_cast<const char *>(&n), 8);
  file += head;
  file += payload;
  WriteFileAtomic(path, file);
}

}  // namespace simprobe::lm
