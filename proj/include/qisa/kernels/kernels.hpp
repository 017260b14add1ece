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
 * Data-parallel inner loops of the state-vector engine.
 *
 * Every kernel has a portable scalar reference and, on x86-64, an AVX2
 * variant. The scalar code follows the same four-lane accumulation order and
 * the same multiply/add sequence as the vector code (no fused multiply-add
 * anywhere), so both variants produce bit-identical results. That is what
 * keeps seeded runs reproducible regardless of which table is active.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qisa::kernels {

using cplx = std::complex<double>;

struct KernelTable {
    std::string_view name;

    /// Sum of squared magnitudes.
    double (*sum_norm2)(std::span<const cplx> x);

    /// out[i] = |x[i]|^2
    void (*norm2)(std::span<const cplx> x, std::span<double> out);

    /// x[i] *= s
    void (*scale)(std::span<cplx> x, double s);

    /// y = M x with M row-major, n x n, n = x.size().
    void (*matvec)(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y);

    /// y = (2/n) * sum(x) - x, i.e. reflection about the uniform vector.
    void (*reflect_mean)(std::span<const cplx> x, std::span<cplx> y);

    /// Radix-2 butterfly passes over bit-reversed input. twiddles[m] = w^m for
    /// m < n/2 where w is the n-th root of unity defining the transform.
    void (*butterflies)(std::span<cplx> data, std::span<const cplx> twiddles);
};

const KernelTable &scalar_kernels() noexcept;

/// AVX2 table, or nullptr when the build or the CPU lacks AVX2.
const KernelTable *avx2_kernels() noexcept;

/// Table used by the engine. Chosen once from CPU features; the QISA_KERNELS
/// environment variable ("scalar", "avx2") overrides the choice.
const KernelTable &active() noexcept;

/// Switches the active table by name. Returns false if unavailable.
bool select(std::string_view name) noexcept;

} // namespace qisa::kernels
