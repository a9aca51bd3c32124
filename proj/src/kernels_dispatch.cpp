#include "sfkit/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sfkit::kernels {

namespace {

bool cpu_has_avx2() {
#if SFKIT_HAVE_AVX2_KERNELS
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa select_isa() {
    if (const char* env = std::getenv("SFKIT_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::Avx2;
        // "auto" or anything unrecognized falls through to detection.
    }
    return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

Isa& isa_state() {
    static Isa isa = select_isa();
    return isa;
}

}  // namespace

Isa active_isa() { return isa_state(); }

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void force_isa(Isa isa) {
    if (isa == Isa::Avx2 && !cpu_has_avx2()) return;
    isa_state() = isa;
}

#if SFKIT_HAVE_AVX2_KERNELS
#define SFKIT_DISPATCH(call) \
    return active_isa() == Isa::Avx2 ? avx2::call : scalar::call
#else
#define SFKIT_DISPATCH(call) return scalar::call
#endif

double sum(const double* x, std::size_t n) { SFKIT_DISPATCH(sum(x, n)); }

double dot(const double* x, const double* y, std::size_t n) { SFKIT_DISPATCH(dot(x, y, n)); }

MomentSums central_moment_sums(const double* x, std::size_t n, double mean) {
    SFKIT_DISPATCH(central_moment_sums(x, n, mean));
}

double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h) {
    SFKIT_DISPATCH(epanechnikov_sum(x, n, center, inv_h));
}

std::size_t count_greater(const double* x, std::size_t n, double threshold) {
    SFKIT_DISPATCH(count_greater(x, n, threshold));
}

std::size_t count_abs_greater(const double* x, std::size_t n, double threshold) {
    SFKIT_DISPATCH(count_abs_greater(x, n, threshold));
}

std::size_t count_abs_geq(const double* x, std::size_t n, double threshold) {
    SFKIT_DISPATCH(count_abs_geq(x, n, threshold));
}

std::size_t first_less(const double* x, std::size_t n, double bound) {
    SFKIT_DISPATCH(first_less(x, n, bound));
}

std::size_t first_greater(const double* x, std::size_t n, double bound) {
    SFKIT_DISPATCH(first_greater(x, n, bound));
}

void subtract_scalar(const double* x, std::size_t n, double c, double* out) {
#if SFKIT_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) {
        avx2::subtract_scalar(x, n, c, out);
        return;
    }
#endif
    scalar::subtract_scalar(x, n, c, out);
}

void squared_deviations(const double* x, std::size_t n, double mean, double* out) {
#if SFKIT_HAVE_AVX2_KERNELS
    if (active_isa() == Isa::Avx2) {
        avx2::squared_deviations(x, n, mean, out);
        return;
    }
#endif
    scalar::squared_deviations(x, n, mean, out);
}

#undef SFKIT_DISPATCH

}  // namespace sfkit::kernels
