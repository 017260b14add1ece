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

#include "qisa/lang/ast.hpp"
#include "qisa/lang/lexer.hpp"

#include <span>
#include <string_view>

namespace qisa::lang {

/// Recursive-descent parser for:
///
///   program := (regdecl | stmt)*
///   regdecl := "REG" IDENT INT
///   stmt    := "INI" IDENT | "QFT" IDENT | "REA" IDENT
///            | "ENT" IDENT "," IDENT "," mapspec
///            | "DIF" IDENT "," intexpr
///            | "PHA" IDENT "," phase "," intexpr
///            | "ANN" STRING
///            | "REPEAT" intexpr "{" stmt* "}"
///   mapspec := "MODEXP" "(" intexpr "," intexpr ")" | "TABLE" "(" STRING ")"
///   intexpr := term (("+" | "-") term)*
///   term    := atom ("*" atom)*
///   atom    := INT | "DIM" "(" IDENT ")" | "ISQRT" "(" intexpr ")"
///            | "GROVER_ITERS" "(" intexpr ")" | "(" intexpr ")"
///   phase   := ["-"] ("PI" ["*" INT "/" INT] | FLOAT | INT)
///
/// There is no conditional or jump construct. Throws SourceError(ParseError).
[[nodiscard]] ProgramAst parse(std::span<const Token> tokens);

/// tokenize + parse.
[[nodiscard]] ProgramAst parse_source(std::string_view source);

} // namespace qisa::lang
