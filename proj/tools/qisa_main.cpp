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

// qisa command-line front end: run, parse, anneal, corpus.

#include "qisa/annealer.hpp"
#include "qisa/corpus.hpp"
#include "qisa/error.hpp"
#include "qisa/lang/elaborator.hpp"
#include "qisa/lang/parser.hpp"
#include "qisa/lang/printer.hpp"
#include "qisa/text_io.hpp"
#include "qisa/vm/runtime.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kRuntimeError = 2;

void report(const std::string &where, const std::exception &e) { std::cerr << "qisa: " << where << ": " << e.what() << "\n"; }

int emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        return kOk;
    }
    try {
        qisa::write_text_file(out, text);
    } catch (const qisa::Error &e) {
        report(out, e);
        return kInputError;
    }
    return kOk;
}

struct RunArgs {
    std::string path;
    std::uint64_t seed = 0;
    std::size_t shots = 1;
    bool dump_state = false;
    bool trace = false;
    std::string out;
    unsigned threads = 0;
    qisa::anneal::AnnealSchedule schedule;
};

qisa::lang::ElaboratedProgram load_program(const std::string &path) {
    const std::string source = qisa::read_text_file(path);
    qisa::lang::ElaborateOptions opts;
    opts.base_dir = fs::path(path).parent_path();
    if (opts.base_dir.empty()) {
        opts.base_dir = ".";
    }
    return qisa::lang::elaborate(qisa::lang::parse_source(source), opts);
}

int cmd_run(const RunArgs &args) {
    qisa::lang::ElaboratedProgram program;
    try {
        program = load_program(args.path);
    } catch (const std::exception &e) {
        report(args.path, e);
        return kInputError;
    }
    qisa::vm::RunConfig config;
    config.seed = args.seed;
    config.shots = args.shots;
    config.trace = args.trace;
    config.dump_state = args.dump_state;
    config.schedule = args.schedule;
    config.threads = args.threads;
    if (args.dump_state && args.shots > 1) {
        std::cerr << "qisa: warning: --dump-state applies to single-shot runs only; ignored\n";
    }
    std::string json;
    try {
        json = qisa::vm::serialize(qisa::vm::run_shots(program, config));
    } catch (const std::exception &e) {
        report(args.path, e);
        return kRuntimeError;
    }
    return emit(json, args.out);
}

void print_tree(const std::vector<qisa::lang::Statement> &body, int depth, std::ostream &os);

std::string map_source(const qisa::lang::MapSpecExpr &map) {
    if (const auto *m = std::get_if<qisa::lang::ModExpSpec>(&map)) {
        return "MODEXP(" + qisa::lang::to_source(m->base) + ", " + qisa::lang::to_source(m->modulus) + ")";
    }
    return "TABLE(" + qisa::lang::quote(std::get<qisa::lang::TableSpec>(map).path) + ")";
}

void print_statement(const qisa::lang::Statement &st, int depth, std::ostream &os) {
    using namespace qisa::lang;
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    os << indent << qisa::to_string(st.pos) << " ";
    std::visit(
        [&](const auto &node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, IniStmt>) {
                os << "Ini reg=" << node.reg << "\n";
            } else if constexpr (std::is_same_v<T, QftStmt>) {
                os << "Qft reg=" << node.reg << "\n";
            } else if constexpr (std::is_same_v<T, ReaStmt>) {
                os << "Rea reg=" << node.reg << "\n";
            } else if constexpr (std::is_same_v<T, EntStmt>) {
                os << "Ent src=" << node.src << " dst=" << node.dst << " map=" << map_source(node.map) << "\n";
            } else if constexpr (std::is_same_v<T, DifStmt>) {
                os << "Dif reg=" << node.reg << " size=" << to_source(node.size) << "\n";
            } else if constexpr (std::is_same_v<T, PhaStmt>) {
                os << "Pha reg=" << node.reg << " phase=" << to_source(node.phase) << " index=" << to_source(node.index)
                   << "\n";
            } else if constexpr (std::is_same_v<T, AnnStmt>) {
                os << "Ann model=" << quote(node.path) << "\n";
            } else {
                os << "Repeat count=" << to_source(node.count) << "\n";
                print_tree(node.body, depth + 1, os);
            }
        },
        st.node);
}

void print_tree(const std::vector<qisa::lang::Statement> &body, int depth, std::ostream &os) {
    for (const auto &st : body) {
        print_statement(st, depth, os);
    }
}

int cmd_parse(const std::string &path, bool ast) {
    qisa::lang::ProgramAst program;
    try {
        program = qisa::lang::parse_source(qisa::read_text_file(path));
    } catch (const std::exception &e) {
        report(path, e);
        return kInputError;
    }
    if (!ast) {
        std::cout << qisa::lang::pretty_print(program);
        return kOk;
    }
    for (const auto &decl : program.declarations) {
        std::cout << qisa::to_string(decl.pos) << " Reg name=" << decl.name << " width=" << decl.width << "\n";
    }
    print_tree(program.body, 0, std::cout);
    return kOk;
}

int cmd_anneal(const std::string &path, const qisa::anneal::AnnealSchedule &schedule, std::uint64_t seed, bool verify,
               const std::string &out) {
    ordered_json doc;
    try {
        const qisa::anneal::IsingModel model = qisa::anneal::load_ising(path);
        const qisa::anneal::GroundState best = qisa::anneal::anneal(model, schedule, seed);
        doc["model"] = path;
        doc["seed"] = seed;
        doc["schedule"] = ordered_json{{"t0", schedule.initial_temperature},
                                       {"t1", schedule.final_temperature},
                                       {"sweeps", schedule.sweeps_for(model.size())},
                                       {"restarts", schedule.restarts}};
        doc["energy"] = best.energy;
        ordered_json spins = ordered_json::array();
        for (qisa::anneal::Spin s : best.spins) {
            spins.push_back(static_cast<int>(s));
        }
        doc["spins"] = std::move(spins);
        if (verify) {
            doc["ground_energy"] = qisa::anneal::brute_force_ground(model).energy;
        }
    } catch (const std::exception &e) {
        report(path, e);
        return kInputError;
    }
    return emit(doc.dump(2) + "\n", out);
}

int cmd_corpus(const std::string &name, const std::string &dir) {
    try {
        const fs::path written = qisa::corpus::write_corpus(name, dir);
        std::cerr << "wrote " << written.string() << "\n";
    } catch (const std::exception &e) {
        report(name, e);
        return kInputError;
    }
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qisa: assembler and virtual machine for a seven-instruction quantum instruction set"};
    app.require_subcommand(1);

    RunArgs run;
    auto add_schedule = [](CLI::App *cmd, qisa::anneal::AnnealSchedule &s) {
        cmd->add_option("--t0", s.initial_temperature, "initial annealing temperature")->capture_default_str();
        cmd->add_option("--t1", s.final_temperature, "final annealing temperature")->capture_default_str();
        cmd->add_option("--sweeps", s.sweeps, "sweeps per restart (0 = 200 * spins)")->capture_default_str();
        cmd->add_option("--restarts", s.restarts, "independent restarts")->capture_default_str()->check(
            CLI::PositiveNumber);
    };

    CLI::App *run_cmd = app.add_subcommand("run", "execute a program and print a JSON report");
    run_cmd->add_option("path", run.path, "program file (.qvm)")->required();
    run_cmd->add_option("--seed", run.seed, "run seed")->capture_default_str();
    run_cmd->add_option("--shots", run.shots, "number of shots")->capture_default_str()->check(CLI::PositiveNumber);
    run_cmd->add_flag("--dump-state", run.dump_state, "include the final state (single shot only)");
    run_cmd->add_flag("--trace", run.trace, "include every shot record");
    run_cmd->add_option("--out", run.out, "write the report to this file instead of stdout");
    run_cmd->add_option("--threads", run.threads, "worker threads (0 = all cores)")->capture_default_str();
    add_schedule(run_cmd, run.schedule);

    std::string parse_path;
    bool parse_ast = false;
    CLI::App *parse_cmd = app.add_subcommand("parse", "check syntax and print the canonical source");
    parse_cmd->add_option("path", parse_path, "program file (.qvm)")->required();
    parse_cmd->add_flag("--ast", parse_ast, "print the syntax tree with positions instead");

    std::string model_path;
    std::string anneal_out;
    std::uint64_t anneal_seed = 0;
    bool verify = false;
    qisa::anneal::AnnealSchedule schedule;
    CLI::App *anneal_cmd = app.add_subcommand("anneal", "search an Ising model for a ground state");
    anneal_cmd->add_option("model", model_path, "Ising model file")->required();
    anneal_cmd->add_option("--seed", anneal_seed, "annealer seed")->capture_default_str();
    anneal_cmd->add_flag("--verify", verify, "also report the exhaustive ground energy (up to 20 spins)");
    anneal_cmd->add_option("--out", anneal_out, "write the result to this file instead of stdout");
    add_schedule(anneal_cmd, schedule);

    std::string corpus_name;
    std::string corpus_dir = "corpus";
    CLI::App *corpus_cmd = app.add_subcommand("corpus", "write a bundled program and its data files");
    corpus_cmd->add_option("name", corpus_name, "one of: shor_9_4 grover_64 dj_constant dj_balanced anneal_demo")
        ->required();
    corpus_cmd->add_option("--out", corpus_dir, "target directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    }

    if (*run_cmd) {
        return cmd_run(run);
    }
    if (*parse_cmd) {
        return cmd_parse(parse_path, parse_ast);
    }
    if (*anneal_cmd) {
        return cmd_anneal(model_path, schedule, anneal_seed, verify, anneal_out);
    }
    return cmd_corpus(corpus_name, corpus_dir);
}
