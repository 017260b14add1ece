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

#include <string>

namespace qisa::lang {

/// Canonical source text: declarations first, one statement per line, REPEAT
/// bodies indented by four spaces, minimal parentheses. parse_source() of the
/// result is structurally equal to the input.
[[nodiscard]] std::string pretty_print(const ProgramAst &ast);

[[nodiscard]] std::string to_source(const IntExpr &expr);
[[nodiscard]] std::string to_source(const PhaseExpr &phase);

} // namespace qisa::lang
