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

#include "qisa/lang/parser.hpp"

#include <charconv>
#include <limits>

namespace qisa::lang {

namespace {

class Parser {
  public:
    explicit Parser(std::span<const Token> tokens) : toks_(tokens) {}

    ProgramAst program() {
        ProgramAst ast;
        while (!at_end()) {
            if (peek_is(TokenKind::Keyword, "REG")) {
                ast.declarations.push_back(regdecl());
            } else {
                ast.body.push_back(statement());
            }
        }
        return ast;
    }

  private:
    [[nodiscard]] bool at_end() const { return i_ >= toks_.size(); }

    [[nodiscard]] bool peek_is(TokenKind kind, std::string_view lexeme = {}) const {
        return !at_end() && toks_[i_].kind == kind && (lexeme.empty() || toks_[i_].lexeme == lexeme);
    }

    [[nodiscard]] SourcePos here() const {
        if (!at_end()) {
            return toks_[i_].pos;
        }
        if (!toks_.empty()) {
            const Token &last = toks_.back();
            return {last.pos.line, last.pos.column + last.lexeme.size()};
        }
        return {1, 1};
    }

    [[noreturn]] void fail(const std::string &expected) const {
        const std::string found = at_end() ? "end of input"
                                           : std::string(to_string(toks_[i_].kind)) + " '" + toks_[i_].lexeme + "'";
        throw SourceError(ErrorCode::ParseError, here(), "expected " + expected + ", found " + found);
    }

    const Token &expect(TokenKind kind, std::string_view lexeme, const std::string &what) {
        if (!peek_is(kind, lexeme)) {
            fail(what);
        }
        return toks_[i_++];
    }

    const Token &expect_punct(std::string_view p) { return expect(TokenKind::Punct, p, "'" + std::string(p) + "'"); }

    std::string identifier() { return expect(TokenKind::Identifier, {}, "register name").lexeme; }

    std::int64_t integer_value(const Token &t) const {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), v);
        if (ec != std::errc{} || ptr != t.lexeme.data() + t.lexeme.size()) {
            throw SourceError(ErrorCode::ParseError, t.pos, "integer '" + t.lexeme + "' is out of range");
        }
        return v;
    }

    RegDeclAst regdecl() {
        const SourcePos pos = expect(TokenKind::Keyword, "REG", "'REG'").pos;
        RegDeclAst d;
        d.pos = pos;
        d.name = identifier();
        d.width = integer_value(expect(TokenKind::Integer, {}, "register width"));
        return d;
    }

    Statement statement() {
        if (!peek_is(TokenKind::Keyword)) {
            fail("an instruction (INI, QFT, REA, ENT, DIF, PHA, ANN, REPEAT) or REG");
        }
        const Token &kw = toks_[i_];
        Statement s{IniStmt{}, kw.pos};
        ++i_;
        if (kw.lexeme == "INI") {
            s.node = IniStmt{identifier()};
        } else if (kw.lexeme == "QFT") {
            s.node = QftStmt{identifier()};
        } else if (kw.lexeme == "REA") {
            s.node = ReaStmt{identifier()};
        } else if (kw.lexeme == "ENT") {
            std::string src = identifier();
            expect_punct(",");
            std::string dst = identifier();
            expect_punct(",");
            s.node = EntStmt{std::move(src), std::move(dst), mapspec()};
        } else if (kw.lexeme == "DIF") {
            std::string reg = identifier();
            expect_punct(",");
            s.node = DifStmt{std::move(reg), intexpr()};
        } else if (kw.lexeme == "PHA") {
            std::string reg = identifier();
            expect_punct(",");
            PhaseExpr ph = phase();
            expect_punct(",");
            s.node = PhaStmt{std::move(reg), ph, intexpr()};
        } else if (kw.lexeme == "ANN") {
            s.node = AnnStmt{unquote(expect(TokenKind::String, {}, "model file path string").lexeme)};
        } else if (kw.lexeme == "REPEAT") {
            IntExpr count = intexpr();
            expect_punct("{");
            std::vector<Statement> body;
            while (!peek_is(TokenKind::Punct, "}")) {
                if (at_end()) {
                    fail("'}'");
                }
                body.push_back(statement());
            }
            ++i_;
            s.node = RepeatStmt{std::move(count), std::move(body)};
        } else {
            --i_;
            fail("an instruction (INI, QFT, REA, ENT, DIF, PHA, ANN, REPEAT) or REG");
        }
        return s;
    }

    MapSpecExpr mapspec() {
        if (peek_is(TokenKind::Keyword, "MODEXP")) {
            ++i_;
            expect_punct("(");
            IntExpr base = intexpr();
            expect_punct(",");
            IntExpr modulus = intexpr();
            expect_punct(")");
            return ModExpSpec{std::move(base), std::move(modulus)};
        }
        if (peek_is(TokenKind::Keyword, "TABLE")) {
            ++i_;
            expect_punct("(");
            std::string path = unquote(expect(TokenKind::String, {}, "table file path string").lexeme);
            expect_punct(")");
            return TableSpec{std::move(path)};
        }
        fail("MODEXP(...) or TABLE(...)");
    }

    IntExpr intexpr() {
        IntExpr lhs = term();
        while (peek_is(TokenKind::Punct, "+") || peek_is(TokenKind::Punct, "-")) {
            const Token &op = toks_[i_++];
            IntExpr rhs = term();
            const SourcePos pos = lhs.pos;
            lhs = IntExpr{BinaryExpr{op.lexeme == "+" ? BinaryOp::Add : BinaryOp::Sub, std::move(lhs), std::move(rhs)},
                          pos};
        }
        return lhs;
    }

    IntExpr term() {
        IntExpr lhs = atom();
        while (peek_is(TokenKind::Punct, "*")) {
            ++i_;
            IntExpr rhs = atom();
            const SourcePos pos = lhs.pos;
            lhs = IntExpr{BinaryExpr{BinaryOp::Mul, std::move(lhs), std::move(rhs)}, pos};
        }
        return lhs;
    }

    IntExpr atom() {
        const SourcePos pos = here();
        if (peek_is(TokenKind::Integer)) {
            return IntExpr{IntLiteral{integer_value(toks_[i_++])}, pos};
        }
        if (peek_is(TokenKind::Keyword, "DIM")) {
            ++i_;
            expect_punct("(");
            std::string reg = identifier();
            expect_punct(")");
            return IntExpr{DimOf{std::move(reg)}, pos};
        }
        if (peek_is(TokenKind::Keyword, "ISQRT") || peek_is(TokenKind::Keyword, "GROVER_ITERS")) {
            const bool isqrt = toks_[i_].lexeme == "ISQRT";
            ++i_;
            expect_punct("(");
            IntExpr arg = intexpr();
            expect_punct(")");
            if (isqrt) {
                return IntExpr{Isqrt{std::move(arg)}, pos};
            }
            return IntExpr{GroverIters{std::move(arg)}, pos};
        }
        if (peek_is(TokenKind::Punct, "(")) {
            ++i_;
            IntExpr inner = intexpr();
            expect_punct(")");
            inner.pos = pos;
            return inner;
        }
        fail("integer expression");
    }

    PhaseExpr phase() {
        PhaseExpr p;
        p.pos = here();
        bool negative = false;
        if (peek_is(TokenKind::Punct, "-")) {
            negative = true;
            ++i_;
        }
        if (peek_is(TokenKind::Keyword, "PI")) {
            ++i_;
            if (peek_is(TokenKind::Punct, "*")) {
                ++i_;
                p.form = PhaseExpr::Form::PiFraction;
                p.numerator = integer_value(expect(TokenKind::Integer, {}, "integer numerator"));
                expect_punct("/");
                const Token &den = expect(TokenKind::Integer, {}, "integer denominator");
                p.denominator = integer_value(den);
                if (p.denominator == 0) {
                    throw SourceError(ErrorCode::ParseError, den.pos, "phase denominator must be nonzero");
                }
            } else {
                p.form = PhaseExpr::Form::Pi;
                p.numerator = 1;
            }
            if (negative) {
                p.numerator = -p.numerator;
            }
            return p;
        }
        if (peek_is(TokenKind::Float) || peek_is(TokenKind::Integer)) {
            const Token &t = toks_[i_++];
            double v = 0.0;
            const auto [ptr, ec] = std::from_chars(t.lexeme.data(), t.lexeme.data() + t.lexeme.size(), v);
            if (ec != std::errc{} || ptr != t.lexeme.data() + t.lexeme.size()) {
                throw SourceError(ErrorCode::ParseError, t.pos, "phase literal '" + t.lexeme + "' is out of range");
            }
            p.form = PhaseExpr::Form::Literal;
            p.literal = negative ? -v : v;
            return p;
        }
        fail("phase (PI, PI*p/q or a number)");
    }

    std::span<const Token> toks_;
    std::size_t i_ = 0;
};

} // namespace

ProgramAst parse(std::span<const Token> tokens) { return Parser(tokens).program(); }

ProgramAst parse_source(std::string_view source) {
    const std::vector<Token> tokens = tokenize(source);
    return parse(tokens);
}

} // namespace qisa::lang
