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

#ifndef SIMPROBE_LM_SAFETENSORS_H_
#define SIMPROBE_LM_SAFETENSORS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace simprobe::lm {

// A dense tensor widened to double, row-major.
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<double> data;

  int64_t numel() const;
};

using TensorMap = std::map<std::string, Tensor>;

enum class TensorDtype { kF16, kBF16, kF32, kF64 };

// Reads every tensor of a .safetensors file. F16, BF16, F32 and F64 are
// supported; other dtypes raise kDataLoss.
TensorMap ReadSafetensors(const std::filesystem::path &path);

// Writes `tensors` atomically, narrowing to `dtype`.
void WriteSafetensors(const std::filesystem::path &path, const TensorMap &tensors,
                      TensorDtype dtype = TensorDtype::kF32,
                      const std::map<std::string, std::string> &metadata = {});

}  // namespace simprobe::lm

#endif  // SIMPROBE_LM_SAFETENSORS_H_
