#include "sfkit/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/numerics/regression.hpp"
#include "sfkit/numerics/simplex.hpp"
#include "sfkit/stats.hpp"

namespace sfkit {

DensityEstimate kde_epanechnikov(const ReturnSeries& returns, std::size_t grid_size,
                                 BandwidthRule rule, std::optional<double> bandwidth_override) {
    const auto& x = returns.values;
    if (x.size() < 2) throw Error(ErrorCode::SeriesTooShort, "KDE needs >= 2 returns");
    if (grid_size < 2) throw Error(ErrorCode::InvalidParameters, "grid_size must be >= 2");

    const double variance = population_variance(x);
    if (variance <= 0.0) throw Error(ErrorCode::ZeroVariance, "KDE bandwidth undefined");

    const double n = static_cast<double>(x.size());
    double h;
    if (bandwidth_override) {
        h = *bandwidth_override;
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidParameters, "bandwidth must be > 0");
    } else {
        const double spread = rule == BandwidthRule::AsPrinted ? variance : std::sqrt(variance);
        h = 1.06 * spread * std::pow(n, -0.2);
    }

    const auto [min_it, max_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *min_it - h;
    const double hi = *max_it + h;
    const double step = (hi - lo) / static_cast<double>(grid_size - 1);

    DensityEstimate out;
    out.bandwidth = h;
    out.rule = rule;
    out.grid.resize(grid_size);
    out.density.resize(grid_size);
    const double inv_h = 1.0 / h;
    const double scale = 1.0 / (n * h);
    for (std::size_t g = 0; g < grid_size; ++g) {
        const double center = lo + static_cast<double>(g) * step;
        out.grid[g] = center;
        out.density[g] = scale * kernels::epanechnikov_sum(x.data(), x.size(), center, inv_h);
    }
    return out;
}

CcdfCurve ccdf(const ReturnSeries& returns, TailBranch branch) {
    std::vector<double> values;
    values.reserve(returns.size());
    for (double r : returns.values) {
        if (branch == TailBranch::Positive && r > 0.0) values.push_back(r);
        if (branch == TailBranch::Negative && r < 0.0) values.push_back(-r);
        if (branch == TailBranch::Both && r != 0.0) values.push_back(std::fabs(r));
    }
    if (values.empty())
        throw Error(ErrorCode::InsufficientTailData, "no values on the requested branch");

    std::sort(values.begin(), values.end());
    const double n_branch = static_cast<double>(values.size());

    CcdfCurve out;
    out.branch = branch;
    out.branch_count = values.size();
    out.thresholds.reserve(values.size());
    out.survival.reserve(values.size());
    // Strict exceedance: survival at values[k] is (count of values > values[k]) / n.
    // Points whose survival would be 0 (the maxima) are dropped.
    for (std::size_t k = 0; k < values.size(); ++k) {
        std::size_t above = values.size();
        // First index with value > values[k]:
        above = static_cast<std::size_t>(
            std::upper_bound(values.begin(), values.end(), values[k]) - values.begin());
        const std::size_t count_above = values.size() - above;
        if (count_above == 0) break;  // sorted: everything after is the max, too
        out.thresholds.push_back(values[k]);
        out.survival.push_back(static_cast<double>(count_above) / n_branch);
    }
    if (out.thresholds.empty())
        throw Error(ErrorCode::InsufficientTailData, "all branch values equal");
    return out;
}

PowerLawFit fit_tail_exponent(const CcdfCurve& curve, double tail_fraction) {
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw Error(ErrorCode::InvalidParameters, "tail_fraction must be in (0, 1]");
    const std::size_t n = curve.thresholds.size();
    const std::size_t take = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(n))));
    if (take < 10)
        throw Error(ErrorCode::InsufficientTailData,
                    "only " + std::to_string(take) + " points in the tail fraction");

    const std::size_t begin = n - take;
    std::vector<double> log_t, log_s;
    log_t.reserve(take);
    log_s.reserve(take);
    for (std::size_t i = begin; i < n; ++i) {
        if (curve.thresholds[i] <= 0.0) continue;  // log requires positive thresholds
        log_t.push_back(std::log(curve.thresholds[i]));
        log_s.push_back(std::log(curve.survival[i]));
    }
    if (log_t.size() < 10)
        throw Error(ErrorCode::InsufficientTailData, "fewer than 10 usable tail points");
    if (std::all_of(log_t.begin(), log_t.end(),
                    [&](double v) { return v == log_t.front(); }))
        throw Error(ErrorCode::DegenerateRegression, "all tail thresholds equal");

    const RegressionResult reg = linear_fit(log_t, log_s);

    PowerLawFit fit;
    fit.exponent = reg.slope;
    fit.prefactor = std::exp(reg.intercept);
    fit.exponent_stderr = reg.slope_stderr;
    fit.fit_lo = curve.thresholds[begin];
    fit.fit_hi = curve.thresholds[n - 1];
    fit.n_points = log_t.size();
    double ssr = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        const double r = log_s[i] - (reg.intercept + reg.slope * log_t[i]);
        ssr += r * r;
    }
    fit.residual_norm = std::sqrt(ssr);
    return fit;
}

double gaussian_log_likelihood(const std::vector<double>& data, double location, double scale) {
    const double n = static_cast<double>(data.size());
    double ss = 0.0;
    for (double x : data) {
        const double z = (x - location) / scale;
        ss += z * z;
    }
    return -0.5 * ss - n * std::log(scale) - 0.5 * n * std::log(2.0 * std::numbers::pi);
}

double student_t_log_likelihood(const std::vector<double>& data, double location, double scale,
                                double dof) {
    const double n = static_cast<double>(data.size());
    const double constant = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                            0.5 * std::log(dof * std::numbers::pi) - std::log(scale);
    double acc = 0.0;
    for (double x : data) {
        const double z = (x - location) / scale;
        acc += std::log1p(z * z / dof);
    }
    return n * constant - 0.5 * (dof + 1.0) * acc;
}

DistributionFit fit_gaussian(const ReturnSeries& returns) {
    if (returns.size() < 2) throw Error(ErrorCode::SeriesTooShort, "Gaussian fit needs >= 2");
    const double mean = mean_of(returns.values);
    const double variance = population_variance(returns.values, mean);
    if (variance <= 0.0) throw Error(ErrorCode::ZeroVariance, "Gaussian scale must be > 0");

    DistributionFit fit;
    fit.family = DistributionFamily::Gaussian;
    fit.location = mean;
    fit.scale = std::sqrt(variance);
    fit.log_likelihood = gaussian_log_likelihood(returns.values, fit.location, fit.scale);
    return fit;
}

DistributionFit fit_student_t(const ReturnSeries& returns) {
    if (returns.size() < 50)
        throw Error(ErrorCode::SeriesTooShort, "Student-t fit needs >= 50 observations");
    const auto& data = returns.values;
    const double mean = mean_of(data);
    const double variance = population_variance(data, mean);
    if (variance <= 0.0) throw Error(ErrorCode::ZeroVariance, "Student-t scale must be > 0");

    // Unconstrained parameterization: location free, scale = exp(w),
    // dof = 2 + 198 * sigmoid(q) in (2, 200].
    auto dof_of = [](double q) { return 2.0 + 198.0 / (1.0 + std::exp(-q)); };
    auto negative_ll = [&](const std::vector<double>& params) {
        const double location = params[0];
        const double scale = std::exp(params[1]);
        const double dof = dof_of(params[2]);
        return -student_t_log_likelihood(data, location, scale, dof);
    };

    // Start near a moderately heavy-tailed fit: dof0 = 8 => scale^2 = var*(dof-2)/dof.
    const double dof0 = 8.0;
    const std::vector<double> start = {
        mean,
        0.5 * std::log(variance * (dof0 - 2.0) / dof0),
        std::log((dof0 - 2.0) / (200.0 - dof0)),  // inverse sigmoid
    };

    SimplexOptions options;
    options.tolerance = 1e-12;
    options.max_iterations = 4000;
    options.initial_step = 0.25;
    const SimplexResult sol = nelder_mead(negative_ll, start, options);
    if (!sol.converged)
        throw Error(ErrorCode::OptimizerDidNotConverge,
                    "simplex: " + std::to_string(sol.iterations) +
                        " iterations, objective " + std::to_string(sol.objective));

    DistributionFit fit;
    fit.family = DistributionFamily::StudentT;
    fit.location = sol.parameters[0];
    fit.scale = std::exp(sol.parameters[1]);
    fit.dof = dof_of(sol.parameters[2]);
    fit.log_likelihood = -sol.objective;
    fit.iterations = sol.iterations;
    return fit;
}

}  // namespace sfkit
