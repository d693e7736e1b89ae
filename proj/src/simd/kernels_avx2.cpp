// Copyright 2026 the hetnet-ase authors
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

// Compiled with -mavx2. Only reached after a cpuid check in dispatch.cpp.

#include <immintrin.h>

#include <cstdint>

#include "hetnet/simd/kernels.hpp"

namespace hetnet::simd::avx2 {

namespace {

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

inline double horizontal_sum(__m256d v)
{
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d pair = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

// Natural log of positive normal doubles (fdlibm reduction and polynomial).
inline __m256d log_pd(__m256d x)
{
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
    const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);

    // Biased exponent as a double via the 2^52 trick.
    const __m256i exp_field = _mm256_srli_epi64(bits, 52);
    const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
    __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(exp_field, magic)), splat(4503599627370496.0 + 1023.0));

    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));
    const __m256d big = _mm256_cmp_pd(m, splat(1.41421356237309504880), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, splat(0.5)), big);
    e = _mm256_add_pd(e, _mm256_and_pd(big, splat(1.0)));

    const __m256d f = _mm256_sub_pd(m, splat(1.0));
    const __m256d s = _mm256_div_pd(f, _mm256_add_pd(splat(2.0), f));
    const __m256d z = _mm256_mul_pd(s, s);
    const __m256d w = _mm256_mul_pd(z, z);

    const __m256d t1 = _mm256_mul_pd(
        w, _mm256_add_pd(splat(3.999999999940941908e-01),
                         _mm256_mul_pd(w, _mm256_add_pd(splat(2.222219843214978396e-01),
                                                        _mm256_mul_pd(w, splat(1.531383769920937332e-01))))));
    const __m256d t2 = _mm256_mul_pd(
        z, _mm256_add_pd(
               splat(6.666666666666735130e-01),
               _mm256_mul_pd(w, _mm256_add_pd(splat(2.857142874366239149e-01),
                                              _mm256_mul_pd(w, _mm256_add_pd(splat(1.818357216161805012e-01),
                                                                             _mm256_mul_pd(w, splat(1.479819860511658591e-01))))))));
    const __m256d r = _mm256_add_pd(t1, t2);
    const __m256d hfsq = _mm256_mul_pd(splat(0.5), _mm256_mul_pd(f, f));

    // e*ln2_hi - ((hfsq - (s*(hfsq+R) + e*ln2_lo)) - f)
    const __m256d inner = _mm256_add_pd(_mm256_mul_pd(s, _mm256_add_pd(hfsq, r)),
                                        _mm256_mul_pd(e, splat(1.90821492927058770002e-10)));
    return _mm256_sub_pd(_mm256_mul_pd(e, splat(6.93147180369123816490e-01)),
                         _mm256_sub_pd(_mm256_sub_pd(hfsq, inner), f));
}

// exp for |x| < 700 (fdlibm reduction and rational correction).
inline __m256d exp_pd(__m256d x)
{
    const __m256d k = _mm256_round_pd(_mm256_mul_pd(x, splat(1.44269504088896338700e+00)),
                                      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    const __m256d hi = _mm256_sub_pd(x, _mm256_mul_pd(k, splat(6.93147180369123816490e-01)));
    const __m256d lo = _mm256_mul_pd(k, splat(1.90821492927058770002e-10));
    const __m256d r = _mm256_sub_pd(hi, lo);
    const __m256d t = _mm256_mul_pd(r, r);

    __m256d poly = splat(4.13813679705723846039e-08);
    poly = _mm256_add_pd(splat(-1.65339022054652515390e-06), _mm256_mul_pd(t, poly));
    poly = _mm256_add_pd(splat(6.61375632143793436117e-05), _mm256_mul_pd(t, poly));
    poly = _mm256_add_pd(splat(-2.77777777770155933842e-03), _mm256_mul_pd(t, poly));
    poly = _mm256_add_pd(splat(1.66666666666666019037e-01), _mm256_mul_pd(t, poly));
    const __m256d c = _mm256_sub_pd(r, _mm256_mul_pd(t, poly));

    // y = 1 - ((lo - (r*c)/(2-c)) - hi)
    const __m256d frac = _mm256_div_pd(_mm256_mul_pd(r, c), _mm256_sub_pd(splat(2.0), c));
    const __m256d y = _mm256_sub_pd(splat(1.0), _mm256_sub_pd(_mm256_sub_pd(lo, frac), hi));

    // Scale by 2^k: k sits in the low mantissa bits after adding 1.5 * 2^52.
    const __m256d shifter = splat(6755399441055744.0);
    const __m256i ki = _mm256_sub_epi64(_mm256_castpd_si256(_mm256_add_pd(k, shifter)), _mm256_castpd_si256(shifter));
    const __m256i scale_bits = _mm256_slli_epi64(_mm256_add_epi64(ki, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(y, _mm256_castsi256_pd(scale_bits));
}

} // namespace

std::size_t argmin(std::span<const double> values)
{
    const std::size_t n = values.size();
    if (n < 8) return scalar::argmin(values);

    const double* p = values.data();
    __m256d best = _mm256_loadu_pd(p);
    __m256d best_idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
    __m256d idx = best_idx;
    const __m256d step = splat(4.0);

    std::size_t i = 4;
    for (; i + 4 <= n; i += 4) {
        idx = _mm256_add_pd(idx, step);
        const __m256d v = _mm256_loadu_pd(p + i);
        const __m256d lt = _mm256_cmp_pd(v, best, _CMP_LT_OQ);
        best = _mm256_blendv_pd(best, v, lt);
        best_idx = _mm256_blendv_pd(best_idx, idx, lt);
    }

    alignas(32) double vals[4];
    alignas(32) double ids[4];
    _mm256_store_pd(vals, best);
    _mm256_store_pd(ids, best_idx);
    double min_v = vals[0];
    double min_i = ids[0];
    for (int lane = 1; lane < 4; ++lane) {
        if (vals[lane] < min_v || (vals[lane] == min_v && ids[lane] < min_i)) {
            min_v = vals[lane];
            min_i = ids[lane];
        }
    }
    auto result = static_cast<std::size_t>(min_i);
    for (; i < n; ++i) {
        if (p[i] < min_v) {
            min_v = p[i];
            result = i;
        }
    }
    return result;
}

double path_gain_sum(std::span<const double> dist2, std::span<const double> gains, double half_alpha)
{
    const std::size_t n = dist2.size();
    const double* d = dist2.data();
    const double* g = gains.data();
    const int power = detail::integer_power(half_alpha);

    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    if (power > 0) {
        for (; i + 4 <= n; i += 4) {
            const __m256d dv = _mm256_loadu_pd(d + i);
            __m256d pv = dv;
            for (int j = 1; j < power; ++j) pv = _mm256_mul_pd(pv, dv);
            acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(g + i), pv));
        }
    } else {
        const __m256d neg_h = splat(-half_alpha);
        for (; i + 4 <= n; i += 4) {
            const __m256d pl = exp_pd(_mm256_mul_pd(neg_h, log_pd(_mm256_loadu_pd(d + i))));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(g + i), pl));
        }
    }
    double sum = horizontal_sum(acc);
    sum += scalar::path_gain_sum(dist2.subspan(i), gains.subspan(i), half_alpha);
    return sum;
}

void neg_log(std::span<const double> in, std::span<double> out)
{
    const std::size_t n = in.size();
    std::size_t i = 0;
    const __m256d zero = _mm256_setzero_pd();
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(out.data() + i, _mm256_sub_pd(zero, log_pd(_mm256_loadu_pd(in.data() + i))));
    }
    scalar::neg_log(in.subspan(i), out.subspan(i));
}

} // namespace hetnet::simd::avx2
