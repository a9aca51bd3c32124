#pragma once

// Small moment helpers shared across the estimators. All moments are
// population (1/N) moments; the kurtosis is the standardized fourth moment
// m4 / m2^2, with "excess" meaning that value minus 3.

#include <span>

#include "sfkit/kernels/kernels.hpp"

namespace sfkit {

inline double mean_of(std::span<const double> x) {
    return kernels::sum(x.data(), x.size()) / static_cast<double>(x.size());
}

inline double population_variance(std::span<const double> x, double mean) {
    const auto sums = kernels::central_moment_sums(x.data(), x.size(), mean);
    return sums.m2 / static_cast<double>(x.size());
}

inline double population_variance(std::span<const double> x) {
    return population_variance(x, mean_of(x));
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // population
    double m3 = 0.0;        // third central moment
    double m4 = 0.0;        // fourth central moment
};

inline Moments central_moments(std::span<const double> x) {
    Moments m;
    m.mean = mean_of(x);
    const auto sums = kernels::central_moment_sums(x.data(), x.size(), m.mean);
    const double n = static_cast<double>(x.size());
    m.variance = sums.m2 / n;
    m.m3 = sums.m3 / n;
    m.m4 = sums.m4 / n;
    return m;
}

// K(X) - 3 with K = m4 / m2^2. Callers must reject zero variance.
inline double excess_kurtosis(const Moments& m) {
    return m.m4 / (m.variance * m.variance) - 3.0;
}

}  // namespace sfkit
