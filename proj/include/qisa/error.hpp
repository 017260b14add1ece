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
 * Error type shared by every qisa module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qisa {

enum class ErrorCode {
    EmptyRegisterList,
    WidthExceeded,
    IndexOutOfRange,
    DimensionMismatch,
    NotUnitary,
    ZeroProbabilityBranch,
    MapDomainError,
    MapRangeError,
    InvalidModel,
    TooLarge,
    ContractError,
    LexError,
    ParseError,
    ElaborationError,
    IoError,
    UnknownCorpusName,
};

[[nodiscard]] std::string_view to_string(ErrorCode code) noexcept;

/// Line/column of a source construct, both 1-based. A zero line means "no position".
struct SourcePos {
    std::size_t line = 0;
    std::size_t column = 0;

    friend bool operator==(const SourcePos &, const SourcePos &) = default;
    friend auto operator<=>(const SourcePos &, const SourcePos &) = default;
};

[[nodiscard]] std::string to_string(SourcePos pos);

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Errors raised while reading assembly source; they always carry a position.
class SourceError : public Error {
  public:
    SourceError(ErrorCode code, SourcePos pos, const std::string &message)
        : Error(code, to_string(pos) + ": " + message), pos_(pos) {}

    [[nodiscard]] SourcePos pos() const noexcept { return pos_; }

  private:
    SourcePos pos_;
};

} // namespace qisa
