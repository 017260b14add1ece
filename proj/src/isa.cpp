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

#include "qisa/isa.hpp"

#include "qisa/error.hpp"
#include "qisa/kernels/kernels.hpp"
#include "qisa/text_io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <unordered_map>

namespace qisa {

// ------------------------------------------------------------- PhaseAngle

PhaseAngle PhaseAngle::radians(double value) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::ContractError, "phase angle must be finite");
    }
    PhaseAngle p;
    p.radians_ = value;
    return p;
}

PhaseAngle PhaseAngle::pi_times(std::int64_t numerator, std::int64_t denominator) {
    if (denominator <= 0) {
        throw Error(ErrorCode::ContractError, "phase denominator must be positive");
    }
    PhaseAngle p;
    p.radians_ = std::numbers::pi * static_cast<double>(numerator) / static_cast<double>(denominator);
    p.pi_fraction_ = std::make_pair(numerator, denominator);
    return p;
}

PhaseAngle PhaseAngle::negated() const {
    if (pi_fraction_) {
        return pi_times(-pi_fraction_->first, pi_fraction_->second);
    }
    return radians(-radians_);
}

Amplitude PhaseAngle::factor() const {
    if (pi_fraction_) {
        const auto [p, q] = *pi_fraction_;
        // angle = pi * r / q with r reduced into [0, 2q)
        const std::int64_t period = 2 * q;
        const std::int64_t r = ((p % period) + period) % period;
        if ((2 * r) % q == 0) {
            switch ((2 * r) / q) {
            case 0:
                return {1.0, 0.0};
            case 1:
                return {0.0, 1.0};
            case 2:
                return {-1.0, 0.0};
            default:
                return {0.0, -1.0};
            }
        }
        return std::polar(1.0, std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
    }
    if (radians_ == 0.0) {
        return {1.0, 0.0};
    }
    return std::polar(1.0, radians_);
}

// ------------------------------------------------------------ MappingSpec

MappingSpec MappingSpec::mod_exp(std::uint64_t base, std::uint64_t modulus) {
    if (base == 0) {
        throw Error(ErrorCode::ContractError, "MODEXP base must be positive");
    }
    if (modulus < 2) {
        throw Error(ErrorCode::ContractError, "MODEXP modulus must be at least 2");
    }
    return MappingSpec(ModExp{base, modulus});
}

MappingSpec MappingSpec::table(std::map<std::uint64_t, std::uint64_t> entries) {
    return MappingSpec(Table{std::move(entries)});
}

std::uint64_t MappingSpec::image(std::uint64_t j) const {
    if (const auto *m = std::get_if<ModExp>(&kind_)) {
        return mod_pow(m->base, j, m->modulus);
    }
    const auto &entries = std::get<Table>(kind_).entries;
    const auto it = entries.find(j);
    if (it == entries.end()) {
        throw Error(ErrorCode::MapDomainError, "map has no entry for " + std::to_string(j));
    }
    return it->second;
}

std::vector<std::uint64_t> MappingSpec::resolve(std::uint64_t domain, std::uint64_t codomain) const {
    std::vector<std::uint64_t> images(domain);
    for (std::uint64_t j = 0; j < domain; ++j) {
        images[j] = image(j);
        if (images[j] >= codomain) {
            throw Error(ErrorCode::MapRangeError, "M(" + std::to_string(j) + ") = " + std::to_string(images[j]) +
                                                      " does not fit a register of dimension " +
                                                      std::to_string(codomain));
        }
    }
    return images;
}

MappingSpec parse_table(std::string_view text) {
    std::map<std::uint64_t, std::uint64_t> entries;
    std::size_t line_no = 0;
    for (std::string_view raw : split_lines(text)) {
        ++line_no;
        std::string_view line = raw.substr(0, raw.find('#'));
        const auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
                s.remove_prefix(1);
            }
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
                s.remove_suffix(1);
            }
            return s;
        };
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto comma = line.find(',');
        const auto number = [&](std::string_view field) {
            field = trim(field);
            std::uint64_t v = 0;
            const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
            if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
                throw Error(ErrorCode::MapDomainError,
                            "line " + std::to_string(line_no) + ": expected 'j,M(j)' with decimal integers");
            }
            return v;
        };
        if (comma == std::string_view::npos) {
            throw Error(ErrorCode::MapDomainError,
                        "line " + std::to_string(line_no) + ": expected 'j,M(j)' with decimal integers");
        }
        const std::uint64_t j = number(line.substr(0, comma));
        const std::uint64_t m = number(line.substr(comma + 1));
        if (!entries.emplace(j, m).second) {
            throw Error(ErrorCode::MapDomainError, "line " + std::to_string(line_no) + ": duplicate entry for " +
                                                       std::to_string(j));
        }
    }
    return MappingSpec::table(std::move(entries));
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exponent, std::uint64_t modulus) {
    if (modulus == 0) {
        throw Error(ErrorCode::ContractError, "modulus must be positive");
    }
    __extension__ using wide = unsigned __int128;
    std::uint64_t result = 1 % modulus;
    std::uint64_t b = base % modulus;
    while (exponent > 0) {
        if ((exponent & 1U) != 0) {
            result = static_cast<std::uint64_t>(static_cast<wide>(result) * b % modulus);
        }
        b = static_cast<std::uint64_t>(static_cast<wide>(b) * b % modulus);
        exponent >>= 1U;
    }
    return result;
}

// -------------------------------------------------------------------- QFT

Amplitude root_of_unity(std::uint64_t m, std::uint64_t n) {
    m %= n;
    if ((4 * m) % n == 0) {
        switch ((4 * m) / n) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
        }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

namespace {

using TwiddleTable = std::vector<Amplitude>;

std::shared_ptr<const TwiddleTable> twiddles_for(std::size_t n) {
    static std::mutex mutex;
    static std::unordered_map<std::size_t, std::shared_ptr<const TwiddleTable>> cache;
    std::lock_guard lock(mutex);
    auto &slot = cache[n];
    if (!slot) {
        auto table = std::make_shared<TwiddleTable>(std::max<std::size_t>(n / 2, 1));
        for (std::size_t m = 0; m < table->size(); ++m) {
            (*table)[m] = root_of_unity(m, n);
        }
        slot = std::move(table);
    }
    return slot;
}

// In-place forward transform for power-of-two n, normalized by 1/sqrt(n).
void fourier_pow2(std::span<Amplitude> data) {
    const std::size_t n = data.size();
    if (n <= 1) {
        return;
    }
    const unsigned bits = static_cast<unsigned>(std::countr_zero(n));
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (unsigned b = 0; b < bits; ++b) {
            r |= ((i >> b) & 1U) << (bits - 1 - b);
        }
        if (r > i) {
            std::swap(data[i], data[r]);
        }
    }
    const auto tw = twiddles_for(n);
    const kernels::KernelTable &k = kernels::active();
    k.butterflies(data, *tw);
    k.scale(data, 1.0 / std::sqrt(static_cast<double>(n)));
}

void fourier_direct(std::span<const Amplitude> a, std::span<Amplitude> b) {
    const std::size_t n = a.size();
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        Amplitude sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sum += a[j] * root_of_unity(static_cast<std::uint64_t>(j) * k % n, n);
        }
        b[k] = sum * norm;
    }
}

} // namespace

std::vector<Amplitude> qft_coefficients(std::span<const Amplitude> a) {
    if (a.empty()) {
        throw Error(ErrorCode::ContractError, "QFT needs at least one coefficient");
    }
    std::vector<Amplitude> b(a.begin(), a.end());
    if (std::has_single_bit(a.size())) {
        fourier_pow2(b);
    } else {
        fourier_direct(a, b);
    }
    return b;
}

Unitary qft_matrix(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorCode::ContractError, "QFT dimension must be positive");
    }
    std::vector<Amplitude> m(n * n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            m[k * n + j] = root_of_unity(static_cast<std::uint64_t>(j) * k % n, n) * norm;
        }
    }
    return Unitary::trusted(n, std::move(m));
}

Unitary dif_matrix(std::size_t n) {
    if (n < 2) {
        throw Error(ErrorCode::ContractError, "DIF dimension must be at least 2");
    }
    const double off = 2.0 / static_cast<double>(n);
    std::vector<Amplitude> m(n * n, Amplitude(off, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = Amplitude(off - 1.0, 0.0);
    }
    return Unitary::trusted(n, std::move(m));
}

Unitary pha_matrix(std::size_t n, PhaseAngle phi, std::size_t index) {
    if (index >= n) {
        throw Error(ErrorCode::IndexOutOfRange,
                    "phase index " + std::to_string(index) + " out of range for dimension " + std::to_string(n));
    }
    std::vector<Amplitude> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        m[i * n + i] = 1.0;
    }
    m[index * n + index] = phi.factor();
    return Unitary::trusted(n, std::move(m));
}

// ----------------------------------------------------------- instructions

std::uint64_t sample_inverse_cdf(std::span<const double> probabilities, double draw) {
    double cumulative = 0.0;
    std::optional<std::uint64_t> last_nonzero;
    for (std::size_t v = 0; v < probabilities.size(); ++v) {
        if (probabilities[v] <= 0.0) {
            continue;
        }
        last_nonzero = v;
        cumulative += probabilities[v];
        if (draw < cumulative) {
            return v;
        }
    }
    if (!last_nonzero) {
        throw Error(ErrorCode::ZeroProbabilityBranch, "distribution has no mass");
    }
    return *last_nonzero;
}

JointState reset_observed(const JointState &state, std::size_t reg, std::uint64_t observed) {
    JointState collapsed = collapse(state, reg, observed);
    if (observed == 0) {
        return collapsed;
    }
    const unsigned offset = collapsed.register_offset(reg);
    const std::uint64_t mask = collapsed.register_mask(reg);
    return collapsed.permute_keys([=](std::uint64_t key) {
        const std::uint64_t v = (key & mask) >> offset;
        const std::uint64_t swapped = v == observed ? 0 : (v == 0 ? observed : v);
        return (key & ~mask) | (swapped << offset);
    });
}

JointState op_ini(const JointState &state, std::size_t reg, double draw) {
    return reset_observed(state, reg, sample_inverse_cdf(marginal(state, reg), draw));
}

JointState op_qft(const JointState &state, std::size_t reg) {
    return state.map_register(reg, [](std::span<const Amplitude> in, std::span<Amplitude> out) {
        std::copy(in.begin(), in.end(), out.begin());
        fourier_pow2(out);
    });
}

Readout op_rea(const JointState &state, std::size_t reg, double draw) {
    const std::uint64_t value = sample_inverse_cdf(marginal(state, reg), draw);
    return {value, collapse(state, reg, value)};
}

JointState op_ent(const JointState &state, std::size_t src, std::size_t dst, const MappingSpec &map) {
    const std::uint64_t src_dim = state.dim(src);
    const std::uint64_t dst_dim = state.dim(dst);
    // Only values actually present in src need an image.
    std::vector<std::uint64_t> images(src_dim, 0);
    std::vector<bool> seen(src_dim, false);
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::uint64_t j = state.coordinate(i, src);
        if (!seen[j]) {
            seen[j] = true;
            images[j] = map.image(j);
        }
    }
    for (std::uint64_t j = 0; j < src_dim; ++j) {
        if (seen[j] && images[j] >= dst_dim) {
            throw Error(ErrorCode::MapRangeError, "M(" + std::to_string(j) + ") = " + std::to_string(images[j]) +
                                                      " does not fit a register of dimension " +
                                                      std::to_string(dst_dim));
        }
    }
    return op_ent(state, src, dst, images);
}

JointState op_ent(const JointState &state, std::size_t src, std::size_t dst, std::span<const std::uint64_t> images) {
    if (src == dst) {
        throw Error(ErrorCode::ContractError, "ENT needs two distinct registers");
    }
    const std::uint64_t dst_dim = state.dim(dst);
    const unsigned src_offset = state.register_offset(src);
    const std::uint64_t src_mask = state.register_mask(src);
    const unsigned dst_offset = state.register_offset(dst);
    const std::uint64_t dst_mask = state.register_mask(dst);
    for (std::size_t i = 0; i < state.size(); ++i) {
        const std::uint64_t j = state.coordinate(i, src);
        if (j >= images.size()) {
            throw Error(ErrorCode::MapDomainError, "map is undefined for source value " + std::to_string(j));
        }
        if (images[j] >= dst_dim) {
            throw Error(ErrorCode::MapRangeError, "M(" + std::to_string(j) + ") = " + std::to_string(images[j]) +
                                                      " does not fit a register of dimension " +
                                                      std::to_string(dst_dim));
        }
    }
    return state.permute_keys([&](std::uint64_t key) {
        const std::uint64_t j = (key & src_mask) >> src_offset;
        const std::uint64_t v = (key & dst_mask) >> dst_offset;
        const std::uint64_t moved = (v + images[j]) & (dst_dim - 1);
        return (key & ~dst_mask) | (moved << dst_offset);
    });
}

JointState op_dif(const JointState &state, std::size_t reg, std::uint64_t n) {
    if (n != state.dim(reg)) {
        throw Error(ErrorCode::DimensionMismatch, "DIF size " + std::to_string(n) + " differs from dimension " +
                                                      std::to_string(state.dim(reg)) + " of register '" +
                                                      state.registers()[reg].name + "'");
    }
    const kernels::KernelTable &k = kernels::active();
    return state.map_register(reg, [&](std::span<const Amplitude> in, std::span<Amplitude> out) {
        k.reflect_mean(in, out);
    });
}

JointState op_pha(const JointState &state, std::size_t reg, PhaseAngle phi, std::uint64_t index) {
    if (index >= state.dim(reg)) {
        throw Error(ErrorCode::IndexOutOfRange, "phase index " + std::to_string(index) +
                                                    " out of range for register '" + state.registers()[reg].name +
                                                    "'");
    }
    return state.scale_branch(reg, index, phi.factor());
}

} // namespace qisa
