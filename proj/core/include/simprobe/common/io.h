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

#ifndef SIMPROBE_COMMON_IO_H_
#define SIMPROBE_COMMON_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace simprobe {

std::string ReadFile(const std::filesystem::path &path);
std::vector<std::string> ReadLines(const std::filesystem::path &path);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
void WriteFileAtomic(const std::filesystem::path &path, std::string_view content);

std::vector<nlohmann::json> ReadJsonl(const std::filesystem::path &path);
std::string ToJsonl(const std::vector<nlohmann::json> &rows);
void WriteJsonl(const std::filesystem::path &path,
                const std::vector<nlohmann::json> &rows);

// Hex SHA-256 digests.
std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path &path);

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256 &) = delete;
  Sha256 &operator=(const Sha256 &) = delete;

  void Update(const void *data, size_t size);
  void Update(std::string_view bytes) { Update(bytes.data(), bytes.size()); }
  std::string HexDigest();

 private:
  void *ctx_;
};

}  // namespace simprobe

#endif  // SIMPROBE_COMMON_IO_H_
