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

// Compiled with -mavx2. Only reached through the dispatch table after a CPU
// feature check. Keep the multiply/add order identical to scalar.cpp.
#include "kernels_impl.hpp"

#include <cassert>
#include <immintrin.h>

namespace qisa::kernels::avx2 {

namespace {

inline const double *flat(std::span<const cplx> x) { return reinterpret_cast<const double *>(x.data()); }
inline double *flat(std::span<cplx> x) { return reinterpret_cast<double *>(x.data()); }

} // namespace

double sum_norm2(std::span<const cplx> x) {
    const double *d = flat(x);
    const std::size_t pairs = x.size() / 2;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < pairs; ++c) {
        const __m256d v = _mm256_loadu_pd(d + 4 * c);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    if (x.size() % 2 != 0) {
        const double re = d[4 * pairs];
        const double im = d[4 * pairs + 1];
        lanes[0] += re * re;
        lanes[1] += im * im;
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

void norm2(std::span<const cplx> x, std::span<double> out) {
    assert(out.size() >= x.size());
    const double *d = flat(x);
    const std::size_t n = x.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v0 = _mm256_loadu_pd(d + 2 * i);
        const __m256d v1 = _mm256_loadu_pd(d + 2 * i + 4);
        // hadd yields [n0, n2, n1, n3]
        const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        _mm256_storeu_pd(out.data() + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
    }
    for (; i < n; ++i) {
        const double re = d[2 * i];
        const double im = d[2 * i + 1];
        out[i] = re * re + im * im;
    }
}

void scale(std::span<cplx> x, double s) {
    double *d = flat(x);
    const std::size_t count = 2 * x.size();
    const __m256d sv = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= count; i += 4) {
        _mm256_storeu_pd(d + i, _mm256_mul_pd(_mm256_loadu_pd(d + i), sv));
    }
    for (; i < count; ++i) {
        d[i] *= s;
    }
}

void matvec(std::span<const cplx> m, std::span<const cplx> x, std::span<cplx> y) {
    const std::size_t n = x.size();
    assert(m.size() >= n * n && y.size() >= n);
    const double *xd = flat(x);
    const std::size_t pairs = n / 2;
    alignas(32) double direct[4];
    alignas(32) double crossed[4];
    for (std::size_t r = 0; r < n; ++r) {
        const double *md = flat(m.subspan(r * n, n));
        __m256d dacc = _mm256_setzero_pd();
        __m256d cacc = _mm256_setzero_pd();
        for (std::size_t c = 0; c < pairs; ++c) {
            const __m256d mv = _mm256_loadu_pd(md + 4 * c);
            const __m256d xv = _mm256_loadu_pd(xd + 4 * c);
            const __m256d xs = _mm256_permute_pd(xv, 0x5);
            dacc = _mm256_add_pd(dacc, _mm256_mul_pd(mv, xv));
            cacc = _mm256_add_pd(cacc, _mm256_mul_pd(mv, xs));
        }
        _mm256_store_pd(direct, dacc);
        _mm256_store_pd(crossed, cacc);
        if (n % 2 != 0) {
            const double *mv = md + 4 * pairs;
            const double *xv = xd + 4 * pairs;
            direct[0] += mv[0] * xv[0];
            direct[1] += mv[1] * xv[1];
            crossed[0] += mv[0] * xv[1];
            crossed[1] += mv[1] * xv[0];
        }
        y[r] = cplx((direct[0] - direct[1]) + (direct[2] - direct[3]),
                    (crossed[0] + crossed[1]) + (crossed[2] + crossed[3]));
    }
}

void reflect_mean(std::span<const cplx> x, std::span<cplx> y) {
    const std::size_t n = x.size();
    assert(y.size() >= n);
    const double *xd = flat(x);
    const std::size_t pairs = n / 2;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t c = 0; c < pairs; ++c) {
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(xd + 4 * c));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    if (n % 2 != 0) {
        lanes[0] += xd[4 * pairs];
        lanes[1] += xd[4 * pairs + 1];
    }
    const double factor = 2.0 / static_cast<double>(n);
    const double mean_re = factor * (lanes[0] + lanes[2]);
    const double mean_im = factor * (lanes[1] + lanes[3]);
    const __m256d mean = _mm256_setr_pd(mean_re, mean_im, mean_re, mean_im);
    double *yd = flat(y);
    for (std::size_t c = 0; c < pairs; ++c) {
        _mm256_storeu_pd(yd + 4 * c, _mm256_sub_pd(mean, _mm256_loadu_pd(xd + 4 * c)));
    }
    if (n % 2 != 0) {
        yd[4 * pairs] = mean_re - xd[4 * pairs];
        yd[4 * pairs + 1] = mean_im - xd[4 * pairs + 1];
    }
}

void butterflies(std::span<cplx> data, std::span<const cplx> twiddles) {
    const std::size_t n = data.size();
    double *d = flat(data);
    const double *w = flat(twiddles);
    if (n >= 2) {
        // len == 2: the only twiddle is w^0
        for (std::size_t start = 0; start < n; start += 2) {
            double *lo = d + 2 * start;
            double *hi = lo + 2;
            const double wr = w[0];
            const double wi = w[1];
            const double tr = hi[0] * wr - hi[1] * wi;
            const double ti = hi[1] * wr + hi[0] * wi;
            const double ur = lo[0];
            const double ui = lo[1];
            lo[0] = ur + tr;
            lo[1] = ui + ti;
            hi[0] = ur - tr;
            hi[1] = ui - ti;
        }
    }
    for (std::size_t len = 4; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t step = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; k += 2) {
                const __m256d wv = _mm256_set_m128d(_mm_loadu_pd(w + 2 * (k + 1) * step),
                                                    _mm_loadu_pd(w + 2 * k * step));
                double *lo = d + 2 * (start + k);
                double *hi = d + 2 * (start + k + half);
                const __m256d a = _mm256_loadu_pd(hi);
                const __m256d wr = _mm256_movedup_pd(wv);
                const __m256d wi = _mm256_permute_pd(wv, 0xF);
                const __m256d swapped = _mm256_permute_pd(a, 0x5);
                const __m256d t = _mm256_addsub_pd(_mm256_mul_pd(a, wr), _mm256_mul_pd(swapped, wi));
                const __m256d u = _mm256_loadu_pd(lo);
                _mm256_storeu_pd(lo, _mm256_add_pd(u, t));
                _mm256_storeu_pd(hi, _mm256_sub_pd(u, t));
            }
        }
    }
}

} // namespace qisa::kernels::avx2
