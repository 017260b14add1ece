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

#include "qisa/lang/printer.hpp"

#include "qisa/lang/lexer.hpp"

#include <charconv>
#include <cstdlib>

namespace qisa::lang {

namespace {

int precedence(const IntExpr &e) {
    if (const auto *b = std::get_if<BinaryExpr>(&e.node)) {
        return b->op == BinaryOp::Mul ? 2 : 1;
    }
    return 3;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void emit(const IntExpr &e, std::string &out) {
    std::visit(Overloaded{
                   [&](const IntLiteral &lit) { out += std::to_string(lit.value); },
                   [&](const DimOf &d) { out += "DIM(" + d.reg + ")"; },
                   [&](const Isqrt &f) {
                       out += "ISQRT(";
                       emit(*f.arg, out);
                       out += ')';
                   },
                   [&](const GroverIters &f) {
                       out += "GROVER_ITERS(";
                       emit(*f.arg, out);
                       out += ')';
                   },
                   [&](const BinaryExpr &b) {
                       const int mine = b.op == BinaryOp::Mul ? 2 : 1;
                       const bool wrap_lhs = precedence(*b.lhs) < mine;
                       const bool wrap_rhs = precedence(*b.rhs) <= mine;
                       if (wrap_lhs) {
                           out += '(';
                       }
                       emit(*b.lhs, out);
                       if (wrap_lhs) {
                           out += ')';
                       }
                       out += b.op == BinaryOp::Add ? " + " : (b.op == BinaryOp::Sub ? " - " : " * ");
                       if (wrap_rhs) {
                           out += '(';
                       }
                       emit(*b.rhs, out);
                       if (wrap_rhs) {
                           out += ')';
                       }
                   },
               },
               e.node);
}

std::string magnitude(std::int64_t v) {
    const std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    return std::to_string(m);
}

std::string float_literal(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, ptr);
    if (s.find_first_of(".e") == std::string::npos) {
        s += ".0";
    }
    return s;
}

void emit_statement(const Statement &s, int depth, std::string &out) {
    const std::string indent(static_cast<std::size_t>(depth) * 4, ' ');
    out += indent;
    std::visit(Overloaded{
                   [&](const IniStmt &st) { out += "INI " + st.reg + '\n'; },
                   [&](const QftStmt &st) { out += "QFT " + st.reg + '\n'; },
                   [&](const ReaStmt &st) { out += "REA " + st.reg + '\n'; },
                   [&](const EntStmt &st) {
                       out += "ENT " + st.src + ", " + st.dst + ", ";
                       if (const auto *m = std::get_if<ModExpSpec>(&st.map)) {
                           out += "MODEXP(" + to_source(m->base) + ", " + to_source(m->modulus) + ")";
                       } else {
                           out += "TABLE(" + quote(std::get<TableSpec>(st.map).path) + ")";
                       }
                       out += '\n';
                   },
                   [&](const DifStmt &st) { out += "DIF " + st.reg + ", " + to_source(st.size) + '\n'; },
                   [&](const PhaStmt &st) {
                       out += "PHA " + st.reg + ", " + to_source(st.phase) + ", " + to_source(st.index) + '\n';
                   },
                   [&](const AnnStmt &st) { out += "ANN " + quote(st.path) + '\n'; },
                   [&](const RepeatStmt &st) {
                       out += "REPEAT " + to_source(st.count) + " {\n";
                       for (const Statement &inner : st.body) {
                           emit_statement(inner, depth + 1, out);
                       }
                       out += indent + "}\n";
                   },
               },
               s.node);
}

} // namespace

std::string to_source(const IntExpr &expr) {
    std::string out;
    emit(expr, out);
    return out;
}

std::string to_source(const PhaseExpr &phase) {
    switch (phase.form) {
    case PhaseExpr::Form::Pi:
        return phase.numerator < 0 ? "-PI" : "PI";
    case PhaseExpr::Form::PiFraction:
        return std::string(phase.numerator < 0 ? "-" : "") + "PI*" + magnitude(phase.numerator) + "/" +
               std::to_string(phase.denominator);
    case PhaseExpr::Form::Literal:
        return float_literal(phase.literal);
    }
    return {};
}

std::string pretty_print(const ProgramAst &ast) {
    std::string out;
    for (const RegDeclAst &d : ast.declarations) {
        out += "REG " + d.name + " " + std::to_string(d.width) + '\n';
    }
    if (!ast.declarations.empty() && !ast.body.empty()) {
        out += '\n';
    }
    for (const Statement &s : ast.body) {
        emit_statement(s, 0, out);
    }
    return out;
}

} // namespace qisa::lang
