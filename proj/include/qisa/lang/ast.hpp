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
 * Syntax tree of the assembly language.
 *
 * Equality on every node is structural and ignores source positions, which is
 * what the print/parse round trip preserves.
 */
#pragma once

#include "qisa/error.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace qisa::lang {

/// Owning, deep-copying pointer for recursive nodes.
template <typename T>
class Box {
  public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {} // NOLINT(google-explicit-constructor)
    Box(const Box &other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
    Box(Box &&) noexcept = default;
    Box &operator=(const Box &other) {
        if (this != &other) {
            ptr_ = std::make_unique<T>(*other.ptr_);
        }
        return *this;
    }
    Box &operator=(Box &&) noexcept = default;
    ~Box() = default;

    T &operator*() { return *ptr_; }
    const T &operator*() const { return *ptr_; }
    T *operator->() { return ptr_.get(); }
    const T *operator->() const { return ptr_.get(); }

    friend bool operator==(const Box &a, const Box &b) { return *a == *b; }

  private:
    std::unique_ptr<T> ptr_;
};

struct IntExpr;

struct IntLiteral {
    std::int64_t value;
    friend bool operator==(const IntLiteral &, const IntLiteral &) = default;
};

struct DimOf {
    std::string reg;
    friend bool operator==(const DimOf &, const DimOf &) = default;
};

struct Isqrt {
    Box<IntExpr> arg;
    friend bool operator==(const Isqrt &, const Isqrt &) = default;
};

/// floor(pi/4 * sqrt(N))
struct GroverIters {
    Box<IntExpr> arg;
    friend bool operator==(const GroverIters &, const GroverIters &) = default;
};

enum class BinaryOp { Add, Sub, Mul };

struct BinaryExpr {
    BinaryOp op;
    Box<IntExpr> lhs;
    Box<IntExpr> rhs;
    friend bool operator==(const BinaryExpr &, const BinaryExpr &) = default;
};

struct IntExpr {
    std::variant<IntLiteral, DimOf, Isqrt, GroverIters, BinaryExpr> node;
    SourcePos pos;

    friend bool operator==(const IntExpr &a, const IntExpr &b) { return a.node == b.node; }
};

/// "PI", "PI*p/q" (optionally negated) or a numeric literal.
struct PhaseExpr {
    enum class Form { Pi, PiFraction, Literal };
    Form form = Form::Pi;
    std::int64_t numerator = 1; ///< signed; carries the sign of "-PI..."
    std::int64_t denominator = 1;
    double literal = 0.0;
    SourcePos pos;

    friend bool operator==(const PhaseExpr &a, const PhaseExpr &b) {
        if (a.form != b.form) {
            return false;
        }
        switch (a.form) {
        case Form::Pi:
            return a.numerator == b.numerator;
        case Form::PiFraction:
            return a.numerator == b.numerator && a.denominator == b.denominator;
        case Form::Literal:
            return a.literal == b.literal;
        }
        return false;
    }
};

struct ModExpSpec {
    IntExpr base;
    IntExpr modulus;
    friend bool operator==(const ModExpSpec &, const ModExpSpec &) = default;
};

struct TableSpec {
    std::string path;
    friend bool operator==(const TableSpec &, const TableSpec &) = default;
};

using MapSpecExpr = std::variant<ModExpSpec, TableSpec>;

struct IniStmt {
    std::string reg;
    friend bool operator==(const IniStmt &, const IniStmt &) = default;
};
struct QftStmt {
    std::string reg;
    friend bool operator==(const QftStmt &, const QftStmt &) = default;
};
struct ReaStmt {
    std::string reg;
    friend bool operator==(const ReaStmt &, const ReaStmt &) = default;
};
struct EntStmt {
    std::string src;
    std::string dst;
    MapSpecExpr map;
    friend bool operator==(const EntStmt &, const EntStmt &) = default;
};
struct DifStmt {
    std::string reg;
    IntExpr size;
    friend bool operator==(const DifStmt &, const DifStmt &) = default;
};
struct PhaStmt {
    std::string reg;
    PhaseExpr phase;
    IntExpr index;
    friend bool operator==(const PhaStmt &, const PhaStmt &) = default;
};
struct AnnStmt {
    std::string path;
    friend bool operator==(const AnnStmt &, const AnnStmt &) = default;
};

struct Statement;

struct RepeatStmt {
    IntExpr count;
    std::vector<Statement> body;
    friend bool operator==(const RepeatStmt &a, const RepeatStmt &b);
};

struct Statement {
    std::variant<IniStmt, QftStmt, ReaStmt, EntStmt, DifStmt, PhaStmt, AnnStmt, RepeatStmt> node;
    SourcePos pos;

    friend bool operator==(const Statement &a, const Statement &b) { return a.node == b.node; }
};

inline bool operator==(const RepeatStmt &a, const RepeatStmt &b) { return a.count == b.count && a.body == b.body; }

struct RegDeclAst {
    std::string name;
    std::int64_t width = 0;
    SourcePos pos;

    friend bool operator==(const RegDeclAst &a, const RegDeclAst &b) {
        return a.name == b.name && a.width == b.width;
    }
};

struct ProgramAst {
    std::vector<RegDeclAst> declarations;
    std::vector<Statement> body;

    friend bool operator==(const ProgramAst &, const ProgramAst &) = default;
};

} // namespace qisa::lang
