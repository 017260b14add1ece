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

/**
 * @file
 * Bundled example programs and the data files they reference.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qisa::corpus {

struct CorpusFile {
    std::string name; ///< file name relative to the corpus directory
    std::string contents;
};

/// Names accepted by files() and write_corpus(), in a fixed order.
[[nodiscard]] const std::vector<std::string> &names();

/// The program (first entry, `<name>.qvm`) followed by its companion files.
/// Throws UnknownCorpusName.
[[nodiscard]] std::vector<CorpusFile> files(std::string_view name);

/// Writes files(name) into `dir`, creating it if needed, and returns the
/// program path. Throws UnknownCorpusName or IoError.
std::filesystem::path write_corpus(std::string_view name, const std::filesystem::path &dir);

/// Map table text for an ENT TABLE over [0, images.size()).
[[nodiscard]] std::string table_text(const std::vector<std::uint64_t> &images);

} // namespace qisa::corpus
