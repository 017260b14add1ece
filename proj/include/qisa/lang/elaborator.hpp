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
 * Turns a syntax tree into a flat, checked instruction list.
 *
 * Count expressions are evaluated, REPEAT loops unrolled, map tables and Ising
 * models loaded, and every static check (declaration before use, widths, PHA
 * index range, DIF size, map totality and range) is performed here so that the
 * VM only ever sees straight-line code that cannot fail on shape errors.
 */
#pragma once

#include "qisa/annealer.hpp"
#include "qisa/isa.hpp"
#include "qisa/lang/ast.hpp"
#include "qisa/state.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qisa::lang {

struct IniOp {
    std::size_t reg;
};
struct QftOp {
    std::size_t reg;
};
struct ReaOp {
    std::size_t reg;
};
struct EntOp {
    std::size_t src;
    std::size_t dst;
    std::shared_ptr<const std::vector<std::uint64_t>> images; ///< M over [0, dim(src))
    std::string label;                                        ///< e.g. MODEXP(4, 9)
};
struct DifOp {
    std::size_t reg;
    std::uint64_t size;
};
struct PhaOp {
    std::size_t reg;
    PhaseAngle phase;
    std::uint64_t index;
};
struct AnnOp {
    std::shared_ptr<const anneal::IsingModel> model;
    std::string path;
};

struct Instruction {
    std::variant<IniOp, QftOp, ReaOp, EntOp, DifOp, PhaOp, AnnOp> op;
    SourcePos pos;
};

struct ElaboratedProgram {
    std::vector<RegisterDecl> registers;
    Limits limits;
    std::vector<Instruction> instructions;
};

struct ElaborateOptions {
    Limits limits;
    /// Relative TABLE/ANN paths resolve against this directory.
    std::filesystem::path base_dir = ".";
    /// Optional override for file access (tests use in-memory files).
    std::function<std::string(const std::string &path)> read_file;
    std::size_t max_instructions = std::size_t{1} << 22;
};

/// Throws SourceError(ElaborationError) naming the failed check.
[[nodiscard]] ElaboratedProgram elaborate(const ProgramAst &ast, const ElaborateOptions &options = {});

/// Value of a count expression. DIM(R) looks R up in `registers`.
[[nodiscard]] std::int64_t evaluate(const IntExpr &expr, const std::vector<RegisterDecl> &registers);

[[nodiscard]] std::int64_t integer_sqrt(std::int64_t n);
/// floor(pi/4 * sqrt(n))
[[nodiscard]] std::int64_t grover_iterations(std::int64_t n);

} // namespace qisa::lang
