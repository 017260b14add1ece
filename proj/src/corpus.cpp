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

#include "qisa/error.hpp"
#include "qisa/text_io.hpp"

#include <cstdint>

namespace qisa::corpus {

namespace {

constexpr std::string_view kShor = R"(; Order finding for N = 9, x = 4.
REG R1 7
REG R2 4

INI R1
INI R2
QFT R1
ENT R1, R2, MODEXP(4, 9)
REA R2
QFT R1
REA R1
)";

// The data register D is amplified first, then copied into the address
// register through the inverse of the lookup table M(j) = (37 j + 11) mod 64.
// The marked value 5 therefore shows up in A as address 50.
constexpr std::string_view kGrover = R"(; Amplitude amplification over 64 entries, marked value 5.
REG A 6
REG D 6

INI A
INI D
QFT D
REPEAT GROVER_ITERS(DIM(D)) {
    PHA D, PI, 5
    DIF D, DIM(D)
}
ENT D, A, TABLE("grover_64_address.map")
REA A
)";

constexpr std::string_view kDjTemplate = R"(; Deutsch-Jozsa over 8 inputs, @KIND@ f.
REG R1 3
REG R2 1

INI R1
INI R2
QFT R1
ENT R1, R2, TABLE("@TABLE@")
PHA R2, PI, 1
ENT R1, R2, TABLE("@TABLE@")
QFT R1
REA R1
)";

constexpr std::string_view kAnneal = R"(; Ground state search on a small frustrated Ising model.
ANN "anneal_demo.ising"
)";

constexpr std::string_view kAnnealModel = R"(# 6 spins: an antiferromagnetic triangle plus a ferromagnetic tail
h 0 0.25
h 3 -0.5
J 0 1 1.0
J 1 2 1.0
J 0 2 1.0
J 2 3 -0.75
J 3 4 -1.0
J 4 5 0.5
J 1 5 -0.25
)";

std::string replace_all(std::string text, std::string_view what, std::string_view with) {
    for (std::size_t at = text.find(what); at != std::string::npos; at = text.find(what, at + with.size())) {
        text.replace(at, what.size(), with);
    }
    return text;
}

std::string dj_program(std::string_view kind, std::string_view table) {
    return replace_all(replace_all(std::string(kDjTemplate), "@KIND@", kind), "@TABLE@", table);
}

std::vector<std::uint64_t> grover_address_table() {
    // inverse of d = (37 a + 11) mod 64; 45 is the inverse of 37
    std::vector<std::uint64_t> images(64);
    for (std::uint64_t d = 0; d < 64; ++d) {
        images[d] = (45 * (d + 64 - 11)) % 64;
    }
    return images;
}

} // namespace

const std::vector<std::string> &names() {
    static const std::vector<std::string> all = {"shor_9_4", "grover_64", "dj_constant", "dj_balanced",
                                                 "anneal_demo"};
    return all;
}

std::string table_text(const std::vector<std::uint64_t> &images) {
    std::string out;
    for (std::size_t j = 0; j < images.size(); ++j) {
        out += std::to_string(j) + "," + std::to_string(images[j]) + "\n";
    }
    return out;
}

std::vector<CorpusFile> files(std::string_view name) {
    if (name == "shor_9_4") {
        return {{"shor_9_4.qvm", std::string(kShor)}};
    }
    if (name == "grover_64") {
        return {{"grover_64.qvm", std::string(kGrover)},
                {"grover_64_address.map", "# data value d -> address j with (37 j + 11) mod 64 = d\n" +
                                              table_text(grover_address_table())}};
    }
    if (name == "dj_constant") {
        return {{"dj_constant.qvm", dj_program("constant", "dj_constant.map")},
                {"dj_constant.map", "# f(j) = 1\n" + table_text(std::vector<std::uint64_t>(8, 1))}};
    }
    if (name == "dj_balanced") {
        return {{"dj_balanced.qvm", dj_program("balanced", "dj_balanced.map")},
                {"dj_balanced.map", "# parity of j\n" + table_text({0, 1, 1, 0, 1, 0, 0, 1})}};
    }
    if (name == "anneal_demo") {
        return {{"anneal_demo.qvm", std::string(kAnneal)}, {"anneal_demo.ising", std::string(kAnnealModel)}};
    }
    throw Error(ErrorCode::UnknownCorpusName, "unknown corpus program '" + std::string(name) + "'");
}

std::filesystem::path write_corpus(std::string_view name, const std::filesystem::path &dir) {
    const std::vector<CorpusFile> bundle = files(name);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
    }
    for (const CorpusFile &f : bundle) {
        write_text_file(dir / f.name, f.contents);
    }
    return dir / bundle.front().name;
}

} // namespace qisa::corpus
