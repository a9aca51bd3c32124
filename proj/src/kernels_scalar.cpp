#include "sfkit/kernels/kernels.hpp"

#include <cmath>

namespace sfkit::kernels::scalar {

double sum(const double* x, std::size_t n) {
    // Two independent accumulators; same pairing as the AVX2 horizontal
    // reduction so the variants agree to reassociation error, not worse.
    double a = 0.0, b = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        a += x[i];
        b += x[i + 1];
    }
    if (i < n) a += x[i];
    return a + b;
}

double dot(const double* x, const double* y, std::size_t n) {
    double a = 0.0, b = 0.0;
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        a += x[i] * y[i];
        b += x[i + 1] * y[i + 1];
    }
    if (i < n) a += x[i] * y[i];
    return a + b;
}

MomentSums central_moment_sums(const double* x, std::size_t n, double mean) {
    MomentSums out;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        const double d2 = d * d;
        out.m2 += d2;
        out.m3 += d2 * d;
        out.m4 += d2 * d2;
    }
    return out;
}

double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = (x[i] - center) * inv_h;
        const double w = 1.0 - u * u;
        if (w > 0.0) acc += 0.75 * w;
    }
    return acc;
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > threshold) ++c;
    return c;
}

std::size_t count_abs_greater(const double* x, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(x[i]) > threshold) ++c;
    return c;
}

std::size_t count_abs_geq(const double* x, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::fabs(x[i]) >= threshold) ++c;
    return c;
}

std::size_t first_less(const double* x, std::size_t n, double bound) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] < bound) return i;
    return n;
}

std::size_t first_greater(const double* x, std::size_t n, double bound) {
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] > bound) return i;
    return n;
}

void subtract_scalar(const double* x, std::size_t n, double c, double* out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] - c;
}

void squared_deviations(const double* x, std::size_t n, double mean, double* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - mean;
        out[i] = d * d;
    }
}

}  // namespace sfkit::kernels::scalar
