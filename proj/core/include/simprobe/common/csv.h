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

#ifndef SIMPROBE_COMMON_CSV_H_
#define SIMPROBE_COMMON_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace simprobe {

// RFC 4180 style parsing: quoted fields may hold delimiters, newlines and
// doubled quotes. Blank lines are skipped.
std::vector<std::vector<std::string>> ParseDelimited(std::string_view text, char delimiter = ',');

// Quotes a field when it holds the delimiter, a quote or a newline.
std::string CsvField(std::string_view value, char delimiter = ',');
std::string CsvRow(const std::vector<std::string> &fields, char delimiter = ',');

}  // namespace simprobe

#endif  // SIMPROBE_COMMON_CSV_H_
