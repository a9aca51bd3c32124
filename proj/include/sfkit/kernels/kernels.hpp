#pragma once

// Data-parallel inner loops used by the estimators. Every kernel exists as a
// scalar reference implementation and (on x86-64) an AVX2/FMA variant; the
// top-level entry points dispatch once at startup based on CPU support, with
// an SFKIT_SIMD={auto,scalar,avx2} environment override. The two variants are
// equivalence-tested against each other; comparison/count kernels match
// exactly, accumulation kernels to floating-point reassociation error.

#include <cstddef>

namespace sfkit::kernels {

// Sums of powers of deviations from a fixed mean: sum (x-m)^2, ^3, ^4.
struct MomentSums {
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
};

namespace scalar {

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
MomentSums central_moment_sums(const double* x, std::size_t n, double mean);
// Sum of 0.75*(1-u^2) over u=(x_i-center)*inv_h with |u| <= 1.
double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h);
std::size_t count_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_geq(const double* x, std::size_t n, double threshold);
// Index of the first element < bound (resp. > bound); n if none.
std::size_t first_less(const double* x, std::size_t n, double bound);
std::size_t first_greater(const double* x, std::size_t n, double bound);
// out[i] = (x[i] - mean); out may alias x.
void subtract_scalar(const double* x, std::size_t n, double c, double* out);
// out[i] = (x[i] - mean)^2.
void squared_deviations(const double* x, std::size_t n, double mean, double* out);

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define SFKIT_HAVE_AVX2_KERNELS 1
namespace avx2 {

double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
MomentSums central_moment_sums(const double* x, std::size_t n, double mean);
double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h);
std::size_t count_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_geq(const double* x, std::size_t n, double threshold);
std::size_t first_less(const double* x, std::size_t n, double bound);
std::size_t first_greater(const double* x, std::size_t n, double bound);
void subtract_scalar(const double* x, std::size_t n, double c, double* out);
void squared_deviations(const double* x, std::size_t n, double mean, double* out);

}  // namespace avx2
#else
#define SFKIT_HAVE_AVX2_KERNELS 0
#endif

enum class Isa { Scalar, Avx2 };

// The ISA picked at startup (CPU support + SFKIT_SIMD override).
Isa active_isa();
const char* isa_name(Isa isa);
// Force a specific ISA (tests; Avx2 requires CPU support).
void force_isa(Isa isa);

// Dispatched entry points.
double sum(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
MomentSums central_moment_sums(const double* x, std::size_t n, double mean);
double epanechnikov_sum(const double* x, std::size_t n, double center, double inv_h);
std::size_t count_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_greater(const double* x, std::size_t n, double threshold);
std::size_t count_abs_geq(const double* x, std::size_t n, double threshold);
std::size_t first_less(const double* x, std::size_t n, double bound);
std::size_t first_greater(const double* x, std::size_t n, double bound);
void subtract_scalar(const double* x, std::size_t n, double c, double* out);
void squared_deviations(const double* x, std::size_t n, double mean, double* out);

}  // namespace sfkit::kernels
