#pragma once

#include <cstdint>
#include <vector>

#include "sfkit/power_law.hpp"
#include "sfkit/series.hpp"

namespace sfkit {

struct MomentTrace {
    std::vector<std::size_t> lengths;
    std::vector<double> moment_values;  // population second central moment
};

struct BootstrapConfig {
    std::size_t n_samples = 100;
    std::size_t sample_size = 100;
    std::uint64_t seed = 0;
};

struct BootstrapResult {
    double mean = 0.0;
    double stderr = 0.0;   // standard deviation across subsamples
    std::size_t n_used = 0;  // subsamples with nonzero variance
};

struct ScaleStatistics {
    std::size_t tau = 1;
    double mean_return = 0.0;
    double variance = 0.0;
    double excess_kurtosis = 0.0;
    double kurtosis_stderr = 0.0;
};

// Population second central moment of the first L returns, for each
// checkpoint L.
MomentTrace running_second_moment(const ReturnSeries& returns,
                                  const std::vector<std::size_t>& checkpoints);

// Mean and spread of the excess kurtosis (population moments) over
// i.i.d.-with-replacement subsamples. Deterministic for a fixed seed;
// zero-variance subsamples are excluded from the aggregate.
BootstrapResult excess_kurtosis_bootstrap(const ReturnSeries& returns,
                                          const BootstrapConfig& config);

// Per-tau mean / variance / bootstrap excess kurtosis of overlapping
// tau-scale returns.
std::vector<ScaleStatistics> kurtosis_by_scale(const PriceSeries& series,
                                               const std::vector<std::size_t>& taus,
                                               const BootstrapConfig& config);

// Regression of log variance on log mean-return across scales: the
// fluctuation-scaling exponent lambda (and prefactor).
PowerLawFit taylor_law_fit(const PriceSeries& series, const std::vector<std::size_t>& taus);

// Same regression from precomputed per-scale moments.
PowerLawFit taylor_fit_from_moments(const std::vector<double>& mean_returns,
                                    const std::vector<double>& variances);

// Companion exponent gamma: slope of log variance vs log tau (a distinct
// regression from the Taylor fit).
PowerLawFit variance_tau_exponent(const PriceSeries& series,
                                  const std::vector<std::size_t>& taus);

}  // namespace sfkit
