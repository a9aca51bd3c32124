#include "sfkit/moments.hpp"

#include <algorithm>
#include <cmath>

#include "sfkit/errors.hpp"
#include "sfkit/numerics/regression.hpp"
#include "sfkit/numerics/rng.hpp"
#include "sfkit/stats.hpp"

namespace sfkit {

MomentTrace running_second_moment(const ReturnSeries& returns,
                                  const std::vector<std::size_t>& checkpoints) {
    MomentTrace trace;
    trace.lengths = checkpoints;
    trace.moment_values.reserve(checkpoints.size());
    for (std::size_t i = 1; i < checkpoints.size(); ++i)
        if (checkpoints[i] <= checkpoints[i - 1])
            throw Error(ErrorCode::InvalidParameters, "checkpoints must be strictly increasing");
    for (std::size_t length : checkpoints) {
        if (length < 2 || length > returns.size())
            throw Error(ErrorCode::CheckpointOutOfRange,
                        "checkpoint " + std::to_string(length) + " for series of " +
                            std::to_string(returns.size()));
        trace.moment_values.push_back(
            population_variance({returns.values.data(), length}));
    }
    return trace;
}

BootstrapResult excess_kurtosis_bootstrap(const ReturnSeries& returns,
                                          const BootstrapConfig& config) {
    // Sampling is with replacement, so the source only has to be nonempty
    // with spread; sample_size may exceed the series length.
    if (returns.size() < 2)
        throw Error(ErrorCode::SeriesTooShort,
                    "series of " + std::to_string(returns.size()) + " returns");
    if (config.n_samples == 0 || config.sample_size < 2)
        throw Error(ErrorCode::InvalidParameters, "bootstrap sizes must be positive");
    if (population_variance(returns.values) <= 0.0)
        throw Error(ErrorCode::ZeroVariance, "kurtosis undefined for constant series");

    const auto& source = returns.values;
    std::vector<double> kurtoses;
    kurtoses.reserve(config.n_samples);
    std::vector<double> subsample(config.sample_size);
    for (std::size_t s = 0; s < config.n_samples; ++s) {
        // Per-subsample stream keyed by (seed, index): schedule-independent.
        Rng rng = Rng::split(config.seed, s);
        for (std::size_t i = 0; i < config.sample_size; ++i)
            subsample[i] = source[rng.uniform_index(source.size())];
        const Moments m = central_moments(subsample);
        if (m.variance <= 0.0) continue;  // degenerate draw, excluded
        kurtoses.push_back(excess_kurtosis(m));
    }
    if (kurtoses.empty())
        throw Error(ErrorCode::ZeroVariance, "all bootstrap subsamples degenerate");

    BootstrapResult out;
    out.n_used = kurtoses.size();
    out.mean = mean_of(kurtoses);
    out.stderr = std::sqrt(population_variance(kurtoses, out.mean));
    return out;
}

std::vector<ScaleStatistics> kurtosis_by_scale(const PriceSeries& series,
                                               const std::vector<std::size_t>& taus,
                                               const BootstrapConfig& config) {
    std::vector<ScaleStatistics> out;
    out.reserve(taus.size());
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const ReturnSeries r = log_returns(series, taus[i]);
        BootstrapConfig per_tau = config;
        per_tau.seed = Rng::split(config.seed, i).next_u64();  // distinct stream per tau
        const BootstrapResult boot = excess_kurtosis_bootstrap(r, per_tau);

        ScaleStatistics row;
        row.tau = taus[i];
        row.mean_return = mean_of(r.values);
        row.variance = population_variance(r.values, row.mean_return);
        row.excess_kurtosis = boot.mean;
        row.kurtosis_stderr = boot.stderr;
        out.push_back(row);
    }
    return out;
}

PowerLawFit taylor_fit_from_moments(const std::vector<double>& mean_returns,
                                    const std::vector<double>& variances) {
    if (mean_returns.size() != variances.size())
        throw Error(ErrorCode::LengthMismatch, "means vs variances");
    if (mean_returns.size() < 3)
        throw Error(ErrorCode::InsufficientData, "Taylor fit needs >= 3 scales");

    std::vector<double> log_mean, log_var;
    log_mean.reserve(mean_returns.size());
    log_var.reserve(variances.size());
    for (std::size_t i = 0; i < mean_returns.size(); ++i) {
        if (!(mean_returns[i] > 0.0))
            throw Error(ErrorCode::NonPositiveMeanReturn,
                        "scale index " + std::to_string(i) + " has mean " +
                            std::to_string(mean_returns[i]));
        if (!(variances[i] > 0.0))
            throw Error(ErrorCode::ZeroVariance, "scale index " + std::to_string(i));
        log_mean.push_back(std::log(mean_returns[i]));
        log_var.push_back(std::log(variances[i]));
    }

    const RegressionResult reg = linear_fit(log_mean, log_var);
    PowerLawFit fit;
    fit.exponent = reg.slope;
    fit.prefactor = std::exp(reg.intercept);
    fit.exponent_stderr = reg.slope_stderr;
    fit.fit_lo = *std::min_element(mean_returns.begin(), mean_returns.end());
    fit.fit_hi = *std::max_element(mean_returns.begin(), mean_returns.end());
    fit.n_points = mean_returns.size();
    double ssr = 0.0;
    for (std::size_t i = 0; i < log_mean.size(); ++i) {
        const double r = log_var[i] - (reg.intercept + reg.slope * log_mean[i]);
        ssr += r * r;
    }
    fit.residual_norm = std::sqrt(ssr);
    return fit;
}

namespace {

void per_scale_moments(const PriceSeries& series, const std::vector<std::size_t>& taus,
                       std::vector<double>& means, std::vector<double>& variances) {
    means.clear();
    variances.clear();
    for (std::size_t tau : taus) {
        const ReturnSeries r = log_returns(series, tau);
        const double mean = mean_of(r.values);
        means.push_back(mean);
        variances.push_back(population_variance(r.values, mean));
    }
}

}  // namespace

PowerLawFit taylor_law_fit(const PriceSeries& series, const std::vector<std::size_t>& taus) {
    std::vector<double> means, variances;
    per_scale_moments(series, taus, means, variances);
    for (std::size_t i = 0; i < taus.size(); ++i)
        if (!(means[i] > 0.0))
            throw Error(ErrorCode::NonPositiveMeanReturn, "tau " + std::to_string(taus[i]));
    return taylor_fit_from_moments(means, variances);
}

PowerLawFit variance_tau_exponent(const PriceSeries& series,
                                  const std::vector<std::size_t>& taus) {
    if (taus.size() < 3)
        throw Error(ErrorCode::InsufficientData, "gamma fit needs >= 3 scales");
    std::vector<double> means, variances;
    per_scale_moments(series, taus, means, variances);

    std::vector<double> log_tau, log_var;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        if (!(variances[i] > 0.0))
            throw Error(ErrorCode::ZeroVariance, "tau " + std::to_string(taus[i]));
        log_tau.push_back(std::log(static_cast<double>(taus[i])));
        log_var.push_back(std::log(variances[i]));
    }
    const RegressionResult reg = linear_fit(log_tau, log_var);
    PowerLawFit fit;
    fit.exponent = reg.slope;
    fit.prefactor = std::exp(reg.intercept);
    fit.exponent_stderr = reg.slope_stderr;
    fit.fit_lo = static_cast<double>(taus.front());
    fit.fit_hi = static_cast<double>(taus.back());
    fit.n_points = taus.size();
    return fit;
}

}  // namespace sfkit
