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

#include "qisa/error.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qisa::lang {

enum class TokenKind { Keyword, Identifier, Integer, Float, String, Punct };

[[nodiscard]] std::string_view to_string(TokenKind kind) noexcept;

struct Token {
    TokenKind kind;
    std::string lexeme; ///< exact source slice, quotes included for strings
    SourcePos pos;
};

/// Keywords are upper-case only; "Repeat" lexes as an identifier.
[[nodiscard]] bool is_keyword(std::string_view word) noexcept;

/// Drops whitespace and ';' comments. Throws SourceError(LexError).
[[nodiscard]] std::vector<Token> tokenize(std::string_view source);

/// Contents of a string token with escapes (\" and \\) resolved.
[[nodiscard]] std::string unquote(std::string_view lexeme);
/// Inverse of unquote.
[[nodiscard]] std::string quote(std::string_view text);

} // namespace qisa::lang
