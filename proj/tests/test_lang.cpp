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

#include "qisa/corpus.hpp"
#include "qisa/lang/elaborator.hpp"
#include "qisa/lang/lexer.hpp"
#include "qisa/lang/parser.hpp"
#include "qisa/lang/printer.hpp"

#include "ast_generator.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

namespace {

using namespace qisa::lang;
using qisa::ErrorCode;

template <class F>
qisa::SourcePos source_error_pos(ErrorCode expected, F &&f) {
    try {
        f();
    } catch (const qisa::SourceError &e) {
        EXPECT_EQ(e.code(), expected) << e.what();
        return e.pos();
    } catch (const std::exception &e) {
        ADD_FAILURE() << "unexpected exception " << e.what();
        return {};
    }
    ADD_FAILURE() << "no error thrown";
    return {};
}

TEST(Lexer, Examples) {
    const auto t = tokenize("INI R1");
    ASSERT_EQ(t.size(), 2U);
    EXPECT_EQ(t[0].kind, TokenKind::Keyword);
    EXPECT_EQ(t[0].lexeme, "INI");
    EXPECT_EQ(t[1].kind, TokenKind::Identifier);
    EXPECT_EQ(t[1].lexeme, "R1");
    EXPECT_EQ(t[1].pos, (qisa::SourcePos{1, 5}));
    EXPECT_EQ(tokenize("PHA R2, PI, 1").size(), 6U);
    EXPECT_EQ(source_error_pos(ErrorCode::LexError, [] { (void)tokenize("@"); }), (qisa::SourcePos{1, 1}));
}

TEST(Lexer, CommentsNumbersStrings) {
    const auto t = tokenize("; header\nREG Ab_1 3 ; trailing\nPHA x, 1.5e-3, 0\nANN \"a \\\"b\\\".ising\"");
    ASSERT_EQ(t.size(), 11U);
    EXPECT_EQ(t[0].pos, (qisa::SourcePos{2, 1}));
    EXPECT_EQ(t[6].kind, TokenKind::Float);
    EXPECT_EQ(t[10].kind, TokenKind::String);
    EXPECT_EQ(unquote(t[10].lexeme), "a \"b\".ising");
    EXPECT_EQ(quote("a \"b\""), "\"a \\\"b\\\"\"");
    EXPECT_EQ(tokenize("Repeat")[0].kind, TokenKind::Identifier);
    EXPECT_EQ(tokenize("CALL")[0].kind, TokenKind::Keyword);
    source_error_pos(ErrorCode::LexError, [] { (void)tokenize("ANN \"open"); });
    source_error_pos(ErrorCode::LexError, [] { (void)tokenize("PHA R, 1.e, 0"); });
}

TEST(Parser, ShorCorpus) {
    const ProgramAst ast = parse_source(qisa::corpus::files("shor_9_4").front().contents);
    EXPECT_EQ(ast.declarations.size(), 2U);
    EXPECT_EQ(ast.body.size(), 7U);
    EXPECT_EQ(ast.declarations[0], (RegDeclAst{"R1", 7, {}}));
    const auto &ent = std::get<EntStmt>(ast.body[3].node);
    EXPECT_EQ(ent.src, "R1");
    EXPECT_EQ(ent.dst, "R2");
    EXPECT_EQ(std::get<ModExpSpec>(ent.map).base, (IntExpr{IntLiteral{4}, {}}));
}

TEST(Parser, Errors) {
    const auto pos = source_error_pos(ErrorCode::ParseError, [] { (void)parse_source("REG R2 2\nDIF R2"); });
    EXPECT_EQ(pos.line, 2U);
    try {
        (void)parse_source("INI 5");
    } catch (const qisa::SourceError &e) {
        EXPECT_NE(std::string(e.what()).find("expected register name"), std::string::npos) << e.what();
    }
    source_error_pos(ErrorCode::ParseError, [] { (void)parse_source("PHA R, PI*1/0, 0"); });
    source_error_pos(ErrorCode::ParseError, [] { (void)parse_source("REPEAT 2 { INI R"); });
    source_error_pos(ErrorCode::ParseError, [] { (void)parse_source("ENT A, B, SQUARE(3)"); });
    source_error_pos(ErrorCode::ParseError, [] { (void)parse_source("REG R"); });
}

TEST(Parser, RepeatBody) {
    const ProgramAst ast = parse_source("REPEAT GROVER_ITERS(64) { PHA D, PI, 5  DIF D, 64 }");
    ASSERT_EQ(ast.body.size(), 1U);
    const auto &rep = std::get<RepeatStmt>(ast.body[0].node);
    EXPECT_EQ(rep.body.size(), 2U);
    EXPECT_TRUE(std::holds_alternative<GroverIters>(rep.count.node));
}

TEST(Parser, ArithmeticPrecedence) {
    const ProgramAst ast = parse_source("REPEAT 1 + 2 * 3 - 4 { }");
    const auto &count = std::get<RepeatStmt>(ast.body[0].node).count;
    EXPECT_EQ(evaluate(count, {}), 3);
    EXPECT_EQ(to_source(count), "1 + 2 * 3 - 4");
    const ProgramAst grouped = parse_source("REPEAT 2 * (3 - 1) - (4 - 2) { }");
    const auto &g = std::get<RepeatStmt>(grouped.body[0].node).count;
    EXPECT_EQ(evaluate(g, {}), 2);
    EXPECT_EQ(to_source(g), "2 * (3 - 1) - (4 - 2)");
}

TEST(Printer, Examples) {
    const ProgramAst nested = parse_source("REG D 2\nREPEAT 2 { REPEAT 3 { INI D } QFT D }");
    EXPECT_EQ(pretty_print(nested), "REG D 2\n\nREPEAT 2 {\n    REPEAT 3 {\n        INI D\n    }\n    QFT D\n}\n");
    const ProgramAst ent = parse_source("ENT R1,R2,MODEXP(4,9)");
    EXPECT_EQ(pretty_print(ent), "ENT R1, R2, MODEXP(4, 9)\n");
    const ProgramAst phases = parse_source("PHA R, -PI*3/4, 0 PHA R, 2, 1 PHA R, -0.25, 1");
    EXPECT_EQ(pretty_print(phases), "PHA R, -PI*3/4, 0\nPHA R, 2.0, 1\nPHA R, -0.25, 1\n");
}

TEST(Printer, CorpusRoundTrip) {
    for (const std::string &name : qisa::corpus::names()) {
        const ProgramAst ast = parse_source(qisa::corpus::files(name).front().contents);
        EXPECT_EQ(parse_source(pretty_print(ast)), ast) << name;
    }
}

TEST(Elaborator, CountFunctions) {
    const std::vector<qisa::RegisterDecl> regs = {{"D", 6}};
    EXPECT_EQ(evaluate(std::get<RepeatStmt>(parse_source("REPEAT GROVER_ITERS(64) {}").body[0].node).count, regs), 6);
    EXPECT_EQ(evaluate(std::get<RepeatStmt>(parse_source("REPEAT ISQRT(64) {}").body[0].node).count, regs), 8);
    EXPECT_EQ(evaluate(std::get<RepeatStmt>(parse_source("REPEAT DIM(D) - 1 {}").body[0].node).count, regs), 63);
    EXPECT_EQ(grover_iterations(4), 1);
    EXPECT_EQ(grover_iterations(1 << 20), 804);
    EXPECT_EQ(integer_sqrt(0), 0);
    EXPECT_EQ(integer_sqrt(99), 9);
    EXPECT_EQ(integer_sqrt(std::numeric_limits<std::int64_t>::max()), 3037000499);
}

TEST(Elaborator, UnrollsAndResolves) {
    const ElaboratedProgram p = qisa::testing::build(
        "REG A 3\nREG B 2\nINI A\nREPEAT 2 { QFT A  REPEAT DIM(B) { PHA B, PI*1/2, 3 } }\nENT A, B, MODEXP(3, 4)\n");
    ASSERT_EQ(p.registers.size(), 2U);
    ASSERT_EQ(p.instructions.size(), 1U + 2 * (1 + 4) + 1);
    const auto &ent = std::get<EntOp>(p.instructions.back().op);
    EXPECT_EQ(*ent.images, (std::vector<std::uint64_t>{1, 3, 1, 3, 1, 3, 1, 3}));
    EXPECT_EQ(ent.label, "MODEXP(3, 4)");
    const auto &pha = std::get<PhaOp>(p.instructions[3].op);
    EXPECT_EQ(pha.index, 3U);
    EXPECT_EQ(pha.phase.pi_fraction(), std::make_optional(std::make_pair<std::int64_t, std::int64_t>(1, 2)));
}

TEST(Elaborator, StaticChecks) {
    auto bad = [](const std::string &src, const std::map<std::string, std::string> &files = {}) {
        return source_error_pos(ErrorCode::ElaborationError, [&] { (void)qisa::testing::build(src, files); });
    };
    EXPECT_EQ(bad("REG R 3\nDIF R, 4"), (qisa::SourcePos{2, 1}));
    bad("REG R 2\nPHA R, PI, 4");
    bad("INI R");
    bad("INI R\nREG R 2");
    bad("REG R 2\nREG R 3");
    bad("REG R 25");
    bad("REG A 20\nREG B 10");
    bad("REG A 2\nENT A, A, MODEXP(2, 3)");
    bad("REG A 2\nREG B 1\nENT A, B, MODEXP(2, 3)");
    bad("REG A 2\nREG B 2\nENT A, B, TABLE(\"t.map\")", {{"t.map", "0,1\n1,1\n2,1\n"}});
    bad("REG A 1\nREG B 2\nENT A, B, TABLE(\"t.map\")", {{"t.map", "0,1\n1,1\n2,1\n"}});
    bad("REG A 2\nREG B 2\nENT A, B, TABLE(\"missing.map\")");
    bad("REG A 2\nREPEAT 0 - 1 { INI A }");
    bad("REG A 2\nREPEAT 4611686018427387904 * 4 { INI A }");
    bad("REG A 2\nREPEAT 4000000 { REPEAT 4000000 { INI A } }");
    bad("ANN \"m.ising\"", {{"m.ising", "J 0 0 1\n"}});
    EXPECT_NO_THROW((void)qisa::testing::build("REG A 1\nREG B 2\nENT A, B, TABLE(\"t.map\")",
                                               {{"t.map", "0,1\n1,3\n"}}));
}

TEST(Elaborator, AnnealModelLoaded) {
    const ElaboratedProgram p = qisa::testing::build("ANN \"m.ising\"\nANN \"m.ising\"", {{"m.ising", "J 0 1 -1\n"}});
    ASSERT_EQ(p.instructions.size(), 2U);
    const auto &a = std::get<AnnOp>(p.instructions[0].op);
    const auto &b = std::get<AnnOp>(p.instructions[1].op);
    EXPECT_EQ(a.model->size(), 2U);
    EXPECT_EQ(a.model.get(), b.model.get());
}

// Properties

TEST(LangProperty, PrintParseRoundTrip) {
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const ProgramAst ast = qisa::testing::AstGenerator(seed).program();
        const std::string text = pretty_print(ast);
        ProgramAst back;
        ASSERT_NO_THROW(back = parse_source(text)) << text;
        ASSERT_EQ(back, ast) << text;
        ASSERT_EQ(pretty_print(back), text);
    }
}

TEST(LangProperty, ConditionalKeywordsNeverParse) {
    const std::vector<std::string> fragments = {"IF", "JMP", "CALL", "R1", "0", "==", ",", "{", "}", "INI", "label:",
                                                "THEN", "(", ")", "REA R1", "PI", "ELSE", "1", "goto"};
    qisa::CounterRng rng(51);
    int checked = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::string src = rng.below(2) == 0 ? "REG R1 2\n" : "";
        const std::size_t n = 1 + rng.below(8);
        const std::size_t at = rng.below(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == at) {
                static const char *const cond[] = {"IF", "JMP", "CALL"};
                src += cond[rng.below(3)];
            } else {
                src += fragments[rng.below(fragments.size())];
            }
            src += rng.below(3) == 0 ? "\n" : " ";
        }
        try {
            (void)parse_source(src);
            FAIL() << "parsed: " << src;
        } catch (const qisa::Error &e) {
            // "==" and ":" fail in the lexer first
            ASSERT_TRUE(e.code() == ErrorCode::ParseError || e.code() == ErrorCode::LexError) << e.what();
            checked += e.code() == ErrorCode::ParseError ? 1 : 0;
        }
    }
    EXPECT_GT(checked, 1000);
}

TEST(LangProperty, ConditionalKeywordsInWellFormedContext) {
    for (const char *kw : {"IF", "JMP", "CALL"}) {
        for (const std::string &tmpl : {std::string("REG R 1\n@ R\n"), std::string("REG R 1\n@ 3\nINI R\n"),
                                        std::string("REG R 1\nREPEAT 2 { @ R }\n"), std::string("@\n")}) {
            std::string src = tmpl;
            src.replace(src.find('@'), 1, kw);
            source_error_pos(ErrorCode::ParseError, [&] { (void)parse_source(src); });
        }
    }
}

std::size_t closed_form_length(const std::vector<Statement> &body) {
    std::size_t total = 0;
    for (const Statement &s : body) {
        if (const auto *rep = std::get_if<RepeatStmt>(&s.node)) {
            total += static_cast<std::size_t>(std::get<IntLiteral>(rep->count.node).value) *
                     closed_form_length(rep->body);
        } else {
            ++total;
        }
    }
    return total;
}

TEST(LangProperty, UnrolledLengthMatchesClosedForm) {
    qisa::CounterRng rng(52);
    std::function<Statement(int)> gen = [&](int depth) -> Statement {
        if (depth < 3 && rng.below(3) == 0) {
            RepeatStmt rep{{IntLiteral{static_cast<std::int64_t>(rng.below(5))}, {}}, {}};
            const std::size_t n = rng.below(4);
            for (std::size_t i = 0; i < n; ++i) {
                rep.body.push_back(gen(depth + 1));
            }
            return {std::move(rep), {}};
        }
        switch (rng.below(3)) {
        case 0:
            return {QftStmt{"R"}, {}};
        case 1:
            return {DifStmt{"R", {DimOf{"R"}, {}}}, {}};
        default:
            return {PhaStmt{"R", PhaseExpr{}, {IntLiteral{1}, {}}}, {}};
        }
    };
    for (int trial = 0; trial < 200; ++trial) {
        ProgramAst ast;
        ast.declarations.push_back({"R", 2, {}});
        const std::size_t n = rng.below(6);
        for (std::size_t i = 0; i < n; ++i) {
            ast.body.push_back(gen(0));
        }
        const ElaboratedProgram p = elaborate(ast);
        ASSERT_EQ(p.instructions.size(), closed_form_length(ast.body));
        ASSERT_EQ(elaborate(ast).instructions.size(), p.instructions.size());
    }
}

} // namespace
