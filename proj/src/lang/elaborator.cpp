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

#include "qisa/lang/elaborator.hpp"

#include "qisa/lang/lexer.hpp"
#include "qisa/lang/printer.hpp"
#include "qisa/text_io.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

namespace qisa::lang {

namespace {

[[noreturn]] void fail(SourcePos pos, const std::string &message) {
    throw SourceError(ErrorCode::ElaborationError, pos, message);
}

bool before(SourcePos a, SourcePos b) {
    // Positions of zero mean the node was built in code, not parsed.
    return a.line == 0 || b.line == 0 || a < b;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

struct DeclaredRegister {
    RegisterDecl decl;
    SourcePos pos;
};

class Elaborator {
  public:
    Elaborator(const ProgramAst &ast, const ElaborateOptions &options) : ast_(ast), opts_(options) {}

    ElaboratedProgram run() {
        declare();
        ElaboratedProgram program;
        program.limits = opts_.limits;
        for (const DeclaredRegister &r : registers_) {
            program.registers.push_back(r.decl);
        }
        program.instructions = unroll(ast_.body);
        return program;
    }

    std::int64_t eval(const IntExpr &e) const {
        return std::visit(
            Overloaded{
                [&](const IntLiteral &lit) { return lit.value; },
                [&](const DimOf &d) {
                    const std::size_t idx = lookup(d.reg, e.pos);
                    return static_cast<std::int64_t>(registers_[idx].decl.dim());
                },
                [&](const Isqrt &f) {
                    const std::int64_t v = eval(*f.arg);
                    if (v < 0) {
                        fail(e.pos, "ISQRT of negative value " + std::to_string(v));
                    }
                    return integer_sqrt(v);
                },
                [&](const GroverIters &f) {
                    const std::int64_t v = eval(*f.arg);
                    if (v < 0) {
                        fail(e.pos, "GROVER_ITERS of negative value " + std::to_string(v));
                    }
                    return grover_iterations(v);
                },
                [&](const BinaryExpr &b) {
                    const std::int64_t l = eval(*b.lhs);
                    const std::int64_t r = eval(*b.rhs);
                    std::int64_t out = 0;
                    bool overflow = false;
                    switch (b.op) {
                    case BinaryOp::Add:
                        overflow = __builtin_add_overflow(l, r, &out);
                        break;
                    case BinaryOp::Sub:
                        overflow = __builtin_sub_overflow(l, r, &out);
                        break;
                    case BinaryOp::Mul:
                        overflow = __builtin_mul_overflow(l, r, &out);
                        break;
                    }
                    if (overflow) {
                        fail(e.pos, "integer overflow in '" + to_source(e) + "'");
                    }
                    return out;
                },
            },
            e.node);
    }

    void add_register(RegisterDecl decl) { registers_.push_back({std::move(decl), {}}); }

  private:
    void declare() {
        unsigned total = 0;
        for (const RegDeclAst &d : ast_.declarations) {
            for (const DeclaredRegister &r : registers_) {
                if (r.decl.name == d.name) {
                    fail(d.pos, "register '" + d.name + "' declared twice");
                }
            }
            if (d.width < 1 || d.width > static_cast<std::int64_t>(opts_.limits.max_register_width)) {
                fail(d.pos, "register '" + d.name + "' width " + std::to_string(d.width) + " outside 1.." +
                                std::to_string(opts_.limits.max_register_width));
            }
            total += static_cast<unsigned>(d.width);
            if (total > opts_.limits.max_total_width) {
                fail(d.pos, "total register width " + std::to_string(total) + " exceeds " +
                                std::to_string(opts_.limits.max_total_width));
            }
            registers_.push_back({RegisterDecl{d.name, static_cast<unsigned>(d.width)}, d.pos});
        }
    }

    std::size_t lookup(const std::string &name, SourcePos use) const {
        for (std::size_t i = 0; i < registers_.size(); ++i) {
            if (registers_[i].decl.name == name) {
                if (!before(registers_[i].pos, use)) {
                    fail(use, "register '" + name + "' used before its declaration at " +
                                  to_string(registers_[i].pos));
                }
                return i;
            }
        }
        fail(use, "undeclared register '" + name + "'");
    }

    std::uint64_t non_negative(const IntExpr &e, const char *what) const {
        const std::int64_t v = eval(e);
        if (v < 0) {
            fail(e.pos, std::string(what) + " evaluates to negative value " + std::to_string(v));
        }
        return static_cast<std::uint64_t>(v);
    }

    std::string read(const std::string &path, SourcePos pos) const {
        try {
            if (opts_.read_file) {
                return opts_.read_file(path);
            }
            const std::filesystem::path p(path);
            return read_text_file(p.is_absolute() ? p : opts_.base_dir / p);
        } catch (const Error &err) {
            fail(pos, err.what());
        }
    }

    std::shared_ptr<const std::vector<std::uint64_t>> table_images(const std::string &path, std::uint64_t domain,
                                                                   std::uint64_t codomain, SourcePos pos) {
        const std::string key = path + '\n' + std::to_string(domain) + '\n' + std::to_string(codomain);
        if (const auto it = tables_.find(key); it != tables_.end()) {
            return it->second;
        }
        try {
            const MappingSpec spec = parse_table(read(path, pos));
            const auto &entries = std::get<MappingSpec::Table>(spec.kind()).entries;
            if (!entries.empty() && entries.rbegin()->first >= domain) {
                fail(pos, "table '" + path + "' has an entry for " + std::to_string(entries.rbegin()->first) +
                              " outside the source domain 0.." + std::to_string(domain - 1));
            }
            auto images = std::make_shared<const std::vector<std::uint64_t>>(spec.resolve(domain, codomain));
            tables_.emplace(key, images);
            return images;
        } catch (const SourceError &) {
            throw;
        } catch (const Error &err) {
            fail(pos, "table '" + path + "': " + err.what());
        }
    }

    std::shared_ptr<const anneal::IsingModel> ising(const std::string &path, SourcePos pos) {
        if (const auto it = models_.find(path); it != models_.end()) {
            return it->second;
        }
        try {
            auto model = std::make_shared<const anneal::IsingModel>(anneal::parse_ising(read(path, pos)));
            models_.emplace(path, model);
            return model;
        } catch (const SourceError &) {
            throw;
        } catch (const Error &err) {
            fail(pos, "Ising model '" + path + "': " + err.what());
        }
    }

    std::uint64_t dim(std::size_t reg) const { return registers_[reg].decl.dim(); }

    void push(std::vector<Instruction> &out, Instruction ins) const {
        if (out.size() >= opts_.max_instructions) {
            fail(ins.pos, "program unrolls to more than " + std::to_string(opts_.max_instructions) + " instructions");
        }
        out.push_back(std::move(ins));
    }

    std::vector<Instruction> unroll(const std::vector<Statement> &body) {
        std::vector<Instruction> out;
        for (const Statement &s : body) {
            std::visit(Overloaded{
                           [&](const IniStmt &st) { push(out, {IniOp{lookup(st.reg, s.pos)}, s.pos}); },
                           [&](const QftStmt &st) { push(out, {QftOp{lookup(st.reg, s.pos)}, s.pos}); },
                           [&](const ReaStmt &st) { push(out, {ReaOp{lookup(st.reg, s.pos)}, s.pos}); },
                           [&](const EntStmt &st) { push(out, {entangle(st, s.pos), s.pos}); },
                           [&](const DifStmt &st) {
                               const std::size_t reg = lookup(st.reg, s.pos);
                               const std::uint64_t n = non_negative(st.size, "DIF size");
                               if (n != dim(reg)) {
                                   fail(s.pos, "DIF size " + std::to_string(n) + " must equal dimension " +
                                                   std::to_string(dim(reg)) + " of register '" + st.reg + "'");
                               }
                               push(out, {DifOp{reg, n}, s.pos});
                           },
                           [&](const PhaStmt &st) {
                               const std::size_t reg = lookup(st.reg, s.pos);
                               const std::uint64_t index = non_negative(st.index, "PHA index");
                               if (index >= dim(reg)) {
                                   fail(s.pos, "PHA index " + std::to_string(index) + " out of range for register '" +
                                                   st.reg + "' of dimension " + std::to_string(dim(reg)));
                               }
                               push(out, {PhaOp{reg, phase(st.phase), index}, s.pos});
                           },
                           [&](const AnnStmt &st) { push(out, {AnnOp{ising(st.path, s.pos), st.path}, s.pos}); },
                           [&](const RepeatStmt &st) {
                               const std::uint64_t count = non_negative(st.count, "REPEAT count");
                               const std::vector<Instruction> inner = unroll(st.body);
                               if (!inner.empty() && count > (opts_.max_instructions - out.size()) / inner.size()) {
                                   fail(s.pos, "program unrolls to more than " +
                                                   std::to_string(opts_.max_instructions) + " instructions");
                               }
                               for (std::uint64_t c = 0; c < count; ++c) {
                                   out.insert(out.end(), inner.begin(), inner.end());
                               }
                           },
                       },
                       s.node);
        }
        return out;
    }

    EntOp entangle(const EntStmt &st, SourcePos pos) {
        const std::size_t src = lookup(st.src, pos);
        const std::size_t dst = lookup(st.dst, pos);
        if (src == dst) {
            fail(pos, "ENT needs two distinct registers, got '" + st.src + "' twice");
        }
        EntOp op{src, dst, nullptr, {}};
        if (const auto *m = std::get_if<ModExpSpec>(&st.map)) {
            const std::uint64_t base = non_negative(m->base, "MODEXP base");
            const std::uint64_t modulus = non_negative(m->modulus, "MODEXP modulus");
            op.label = "MODEXP(" + std::to_string(base) + ", " + std::to_string(modulus) + ")";
            try {
                const MappingSpec spec = MappingSpec::mod_exp(base, modulus);
                op.images = std::make_shared<const std::vector<std::uint64_t>>(spec.resolve(dim(src), dim(dst)));
            } catch (const Error &err) {
                fail(pos, op.label + ": " + err.what());
            }
        } else {
            const auto &path = std::get<TableSpec>(st.map).path;
            op.label = "TABLE(" + quote(path) + ")";
            op.images = table_images(path, dim(src), dim(dst), pos);
        }
        return op;
    }

    static PhaseAngle phase(const PhaseExpr &p) {
        switch (p.form) {
        case PhaseExpr::Form::Pi:
            return PhaseAngle::pi_times(p.numerator, 1);
        case PhaseExpr::Form::PiFraction:
            return PhaseAngle::pi_times(p.numerator, p.denominator);
        case PhaseExpr::Form::Literal:
            break;
        }
        return PhaseAngle::radians(p.literal);
    }

    const ProgramAst &ast_;
    const ElaborateOptions &opts_;
    std::vector<DeclaredRegister> registers_;
    std::unordered_map<std::string, std::shared_ptr<const std::vector<std::uint64_t>>> tables_;
    std::map<std::string, std::shared_ptr<const anneal::IsingModel>> models_;
};

} // namespace

ElaboratedProgram elaborate(const ProgramAst &ast, const ElaborateOptions &options) {
    return Elaborator(ast, options).run();
}

std::int64_t evaluate(const IntExpr &expr, const std::vector<RegisterDecl> &registers) {
    const ProgramAst empty;
    const ElaborateOptions options;
    Elaborator e(empty, options);
    for (const RegisterDecl &r : registers) {
        e.add_register(r);
    }
    return e.eval(expr);
}

std::int64_t integer_sqrt(std::int64_t n) {
    if (n < 0) {
        throw Error(ErrorCode::ContractError, "square root of a negative number");
    }
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) {
        --r;
    }
    while ((r + 1) <= n / (r + 1)) {
        ++r;
    }
    return r;
}

std::int64_t grover_iterations(std::int64_t n) {
    if (n < 0) {
        throw Error(ErrorCode::ContractError, "GROVER_ITERS of a negative number");
    }
    const long double value = std::numbers::pi_v<long double> / 4.0L * std::sqrt(static_cast<long double>(n));
    return static_cast<std::int64_t>(std::floor(value));
}

} // namespace qisa::lang
