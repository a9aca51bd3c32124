// AVX2/FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers must check CPU support before dispatching here.

#include "sfkit/kernels/kernels.hpp"

#if SFKIT_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <cmath>

namespace sfkit::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    // (v0+v2) + (v1+v3): pair lanes first, matching the scalar two-accumulator
    // pattern closely enough for tight equivalence tolerances.
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(s, s);
    return _mm_cvtsd_f64(_mm_add_sd(s, swapped));
}

}  // namespace

double sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i];
    return hsum(acc) + tail;
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double tail = 0.0;
    for (; i < n; ++i) tail += x[i] * y[i];
    return hsum(acc) + tail;
}

MomentSums central_moment_sums(const double* x, std::size_t n, double mean) {
    const __m256d m = _mm256_set1_pd(mean);
    __m256d s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd();
    __m256d s4 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        const __m256d d2 = _mm256_mul_pd(d, d);
        s2 = _mm256_add_pd(s2, d2);
        s3 = _mm256_fmadd_pd(d2, d, s3);
        s4 = _mm256_fmadd_pd(d2, d2, s4);
    }
    MomentSums out;
    out.m2 = hsum(s2);
    out.m3 = hsum(s3);
    out.m4 = hsum(s4);
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h) {
    const __m256d c = _mm256_set1_pd(center);
    const __m256d ih = _mm256_set1_pd(inv_h);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d k = _mm256_set1_pd(0.75);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d u = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(x + i), c), ih);
        const __m256d w = _mm256_fnmadd_pd(u, u, one);  // 1 - u*u
        const __m256d mask = _mm256_cmp_pd(w, _mm256_setzero_pd(), _CMP_GT_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_mul_pd(k, w)));
    }
    double out = hsum(acc);
    for (; i < n; ++i) {
        const double u = (x[i] - center) * inv_h;
        const double w = 1.0 - u * u;
        if (w > 0.0) out += 0.75 * w;
    }
    return out;
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) {
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), t, _CMP_GT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(mask))));
    }
    for (; i < n; ++i)
        if (x[i] > threshold) ++c;
    return c;
}

std::size_t count_abs_greater(const double* x, std::size_t n, double threshold) {
    const __m256d sign_clear = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_and_pd(_mm256_loadu_pd(x + i), sign_clear);
        const __m256d mask = _mm256_cmp_pd(a, t, _CMP_GT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(mask))));
    }
    for (; i < n; ++i)
        if (std::fabs(x[i]) > threshold) ++c;
    return c;
}

std::size_t count_abs_geq(const double* x, std::size_t n, double threshold) {
    const __m256d sign_clear = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_and_pd(_mm256_loadu_pd(x + i), sign_clear);
        const __m256d mask = _mm256_cmp_pd(a, t, _CMP_GE_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(mask))));
    }
    for (; i < n; ++i)
        if (std::fabs(x[i]) >= threshold) ++c;
    return c;
}

std::size_t first_less(const double* x, std::size_t n, double bound) {
    const __m256d b = _mm256_set1_pd(bound);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), b, _CMP_LT_OQ);
        const int bits = _mm256_movemask_pd(mask);
        if (bits != 0)
            return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(bits)));
    }
    for (; i < n; ++i)
        if (x[i] < bound) return i;
    return n;
}

std::size_t first_greater(const double* x, std::size_t n, double bound) {
    const __m256d b = _mm256_set1_pd(bound);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), b, _CMP_GT_OQ);
        const int bits = _mm256_movemask_pd(mask);
        if (bits != 0)
            return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(bits)));
    }
    for (; i < n; ++i)
        if (x[i] > bound) return i;
    return n;
}

void subtract_scalar(const double* x, std::size_t n, double c, double* out) {
    const __m256d cc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(x + i), cc));
    for (; i < n; ++i) out[i] = x[i] - c;
}

void squared_deviations(const double* x, std::size_t n, double mean, double* out) {
    const __m256d m = _mm256_set1_pd(mean);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), m);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, d));
    }
    for (; i < n; ++i) {
        const double d = x[i] - mean;
        out[i] = d * d;
    }
}

}  // namespace sfkit::kernels::avx2

#endif  // SFKIT_HAVE_AVX2_KERNELS
