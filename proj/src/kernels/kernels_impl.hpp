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

#pragma once

#include "qisa/kernels/kernels.hpp"

namespace qisa::kernels {

namespace scalar {
double sum_norm2(std::span<const cplx> x);
void norm2(std::span<const cplx> x, std::span<double> out);
void scale(std::span<cplx> x, double s);
void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y);
void reflect_mean(std::span<const cplx> x, std::span<cplx> y);
void butterflies(std::span<cplx> data, std::span<const cplx> twiddles);
} // namespace scalar

#if defined(QISA_HAVE_AVX2_KERNELS)
namespace avx2 {
double sum_norm2(std::span<const cplx> x);
void norm2(std::span<const cplx> x, std::span<double> out);
void scale(std::span<cplx> x, double s);
void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y);
void reflect_mean(std::span<const cplx> x, std::span<cplx> y);
void butterflies(std::span<cplx> data, std::span<const cplx> twiddles);
} // namespace avx2
#endif

} // namespace qisa::kernels
