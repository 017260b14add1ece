// Copyright 2026 The qisa Authors
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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qisa {

/// Whole-file read; throws IoError naming the path.
[[nodiscard]] std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view contents);

/// Splits on '\n', dropping a trailing '\r' from each line.
[[nodiscard]] std::vector<std::string_view> split_lines(std::string_view text);

/// Whitespace-separated fields of one line with any '#' comment removed.
[[nodiscard]] std::vector<std::string_view> comment_stripped_fields(std::string_view line);

} // namespace qisa
