#include "sfkit/persistence.hpp"

#include <cmath>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/numerics/regression.hpp"
#include "sfkit/numerics/rng.hpp"

namespace sfkit {

namespace {

PersistenceCurve curve_from_starts(const PriceSeries& series,
                                   const std::vector<std::size_t>& starts,
                                   std::size_t max_duration) {
    const auto& p = series.prices;

    // Duration histograms; durations land in [0, max_duration].
    std::vector<std::size_t> plus_hist(max_duration + 1, 0);
    std::vector<std::size_t> minus_hist(max_duration + 1, 0);
    std::size_t censored = 0;

    for (std::size_t s : starts) {
        const double p0 = p[s];
        // Largest d with p[s+u] >= p0 for all u <= d: scan from u = 1.
        const std::size_t d_plus = kernels::first_less(p.data() + s + 1, max_duration, p0);
        const std::size_t d_minus = kernels::first_greater(p.data() + s + 1, max_duration, p0);
        plus_hist[d_plus] += 1;
        minus_hist[d_minus] += 1;
        if (d_plus == max_duration) ++censored;
        if (d_minus == max_duration) ++censored;
    }

    PersistenceCurve curve;
    curve.n_samples = starts.size();
    curve.censored_count = censored;
    curve.durations.resize(max_duration);
    curve.p_plus.resize(max_duration);
    curve.p_minus.resize(max_duration);
    curve.p_global.resize(max_duration);
    curve.n_at_risk.resize(max_duration);

    const double n = static_cast<double>(starts.size());
    std::size_t plus_surviving = starts.size();
    std::size_t minus_surviving = starts.size();
    for (std::size_t t = 1; t <= max_duration; ++t) {
        plus_surviving -= plus_hist[t - 1];   // runs that failed before t
        minus_surviving -= minus_hist[t - 1];
        curve.durations[t - 1] = t;
        curve.p_plus[t - 1] = static_cast<double>(plus_surviving) / n;
        curve.p_minus[t - 1] = static_cast<double>(minus_surviving) / n;
        curve.p_global[t - 1] = 0.5 * (curve.p_plus[t - 1] + curve.p_minus[t - 1]);
        curve.n_at_risk[t - 1] = plus_surviving + minus_surviving;
    }
    return curve;
}

void check_window(const PriceSeries& series, std::size_t max_duration) {
    if (max_duration == 0) throw Error(ErrorCode::InvalidParameters, "max_duration must be >= 1");
    if (series.size() <= max_duration + 1)
        throw Error(ErrorCode::SeriesTooShort,
                    "need length > max_duration + 1 = " + std::to_string(max_duration + 1));
}

}  // namespace

PersistenceCurve persistence_curve(const PriceSeries& series, std::size_t n_starts,
                                   std::size_t max_duration, std::uint64_t seed) {
    check_window(series, max_duration);
    if (n_starts == 0) throw Error(ErrorCode::InvalidParameters, "n_starts must be >= 1");

    const std::size_t start_bound = series.size() - max_duration - 1;  // inclusive max index
    std::vector<std::size_t> starts(n_starts);
    Rng rng(seed);
    for (std::size_t i = 0; i < n_starts; ++i)
        starts[i] = static_cast<std::size_t>(rng.uniform_index(start_bound + 1));
    return curve_from_starts(series, starts, max_duration);
}

PersistenceCurve persistence_curve_exhaustive(const PriceSeries& series,
                                              std::size_t max_duration) {
    check_window(series, max_duration);
    const std::size_t start_bound = series.size() - max_duration - 1;
    std::vector<std::size_t> starts(start_bound + 1);
    for (std::size_t s = 0; s <= start_bound; ++s) starts[s] = s;
    return curve_from_starts(series, starts, max_duration);
}

PowerLawFit fit_persistence_exponent(const PersistenceCurve& curve, std::size_t t_lo,
                                     std::size_t t_hi) {
    if (t_lo < 1 || t_hi <= t_lo)
        throw Error(ErrorCode::InvalidParameters, "need 1 <= t_lo < t_hi");

    std::vector<double> log_t, log_p;
    for (std::size_t i = 0; i < curve.durations.size(); ++i) {
        const std::size_t t = curve.durations[i];
        if (t < t_lo || t > t_hi) continue;
        if (!(curve.p_global[i] > 0.0)) continue;
        log_t.push_back(std::log(static_cast<double>(t)));
        log_p.push_back(std::log(curve.p_global[i]));
    }
    if (log_t.size() < 5)
        throw Error(ErrorCode::InsufficientRange,
                    "only " + std::to_string(log_t.size()) + " usable points in range");

    const RegressionResult reg = linear_fit(log_t, log_p);

    PowerLawFit fit;
    fit.exponent = reg.slope;  // theta_g = -slope
    fit.prefactor = std::exp(reg.intercept);
    fit.exponent_stderr = reg.slope_stderr;
    fit.fit_lo = static_cast<double>(t_lo);
    fit.fit_hi = static_cast<double>(t_hi);
    fit.n_points = log_t.size();
    double ssr = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
        const double r = log_p[i] - (reg.intercept + reg.slope * log_t[i]);
        ssr += r * r;
    }
    fit.residual_norm = std::sqrt(ssr);
    return fit;
}

}  // namespace sfkit
