#include "sfkit/correlation.hpp"

#include <cmath>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/numerics/fft.hpp"
#include "sfkit/numerics/regression.hpp"
#include "sfkit/stats.hpp"

namespace sfkit {

namespace {

std::vector<double> demeaned(std::span<const double> x) {
    std::vector<double> out(x.size());
    const double mean = mean_of(x);
    kernels::subtract_scalar(x.data(), x.size(), mean, out.data());
    return out;
}

}  // namespace

CorrelationCurve autocorrelation(std::span<const double> signal, std::size_t max_lag,
                                 CurveKind kind) {
    if (max_lag == 0) throw Error(ErrorCode::InvalidParameters, "max_lag must be >= 1");
    if (signal.size() < 2 * max_lag)
        throw Error(ErrorCode::SeriesTooShort,
                    "need >= " + std::to_string(2 * max_lag) + " samples");

    const std::size_t n = signal.size();
    const std::vector<double> centered = demeaned(signal);
    const std::size_t padded = next_power_of_two(2 * n);

    auto spectrum = fft_real(centered, padded);
    for (auto& bin : spectrum) bin *= std::conj(bin);
    const std::vector<double> acov = ifft_real(spectrum, padded);

    const double lag0 = acov[0];
    if (!(lag0 > 0.0)) throw Error(ErrorCode::ZeroVariance, "flat signal");

    CorrelationCurve curve;
    curve.kind = kind;
    curve.lags.reserve(max_lag + 1);
    curve.values.reserve(max_lag + 1);
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        curve.lags.push_back(static_cast<int>(tau));
        curve.values.push_back(tau == 0 ? 1.0 : acov[tau] / lag0);
    }
    return curve;
}

CorrelationCurve autocorrelation_direct(std::span<const double> signal, std::size_t max_lag,
                                        CurveKind kind) {
    if (max_lag == 0) throw Error(ErrorCode::InvalidParameters, "max_lag must be >= 1");
    if (signal.size() < 2 * max_lag)
        throw Error(ErrorCode::SeriesTooShort,
                    "need >= " + std::to_string(2 * max_lag) + " samples");

    const std::size_t n = signal.size();
    const std::vector<double> centered = demeaned(signal);
    const double lag0 = kernels::scalar::dot(centered.data(), centered.data(), n);
    if (!(lag0 > 0.0)) throw Error(ErrorCode::ZeroVariance, "flat signal");

    CorrelationCurve curve;
    curve.kind = kind;
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        double s = 0.0;
        for (std::size_t t = 0; t + tau < n; ++t) s += centered[t] * centered[t + tau];
        curve.lags.push_back(static_cast<int>(tau));
        curve.values.push_back(tau == 0 ? 1.0 : s / lag0);
    }
    return curve;
}

CorrelationCurve cross_correlation(std::span<const double> x, std::span<const double> y,
                                   std::size_t max_lag, CurveKind kind, bool raw_moment) {
    const std::size_t n = std::min(x.size(), y.size());
    if (max_lag == 0) throw Error(ErrorCode::InvalidParameters, "max_lag must be >= 1");
    if (n < 2 * max_lag)
        throw Error(ErrorCode::SeriesTooShort,
                    "need >= " + std::to_string(2 * max_lag) + " overlapping samples");

    std::vector<double> xv(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> yv(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
    double norm = static_cast<double>(n);
    if (!raw_moment) {
        const double mx = mean_of(xv);
        const double my = mean_of(yv);
        kernels::subtract_scalar(xv.data(), n, mx, xv.data());
        kernels::subtract_scalar(yv.data(), n, my, yv.data());
        const double sx = std::sqrt(kernels::dot(xv.data(), xv.data(), n) / norm);
        const double sy = std::sqrt(kernels::dot(yv.data(), yv.data(), n) / norm);
        if (!(sx > 0.0) || !(sy > 0.0))
            throw Error(ErrorCode::ZeroVariance, "flat cross-correlation input");
        norm *= sx * sy;
    }

    const std::size_t padded = next_power_of_two(2 * n);
    auto sx_spec = fft_real(xv, padded);
    const auto sy_spec = fft_real(yv, padded);
    for (std::size_t k = 0; k < sx_spec.size(); ++k) sx_spec[k] *= std::conj(sy_spec[k]);
    // ifft[tau] = sum_t x(t+tau) y(t) for tau >= 0; negative lags wrap.
    const std::vector<double> ccov = ifft_real(sx_spec, padded);

    CorrelationCurve curve;
    curve.kind = kind;
    curve.lags.reserve(2 * max_lag + 1);
    curve.values.reserve(2 * max_lag + 1);
    for (int tau = -static_cast<int>(max_lag); tau <= static_cast<int>(max_lag); ++tau) {
        const std::size_t idx =
            tau >= 0 ? static_cast<std::size_t>(tau) : padded - static_cast<std::size_t>(-tau);
        curve.lags.push_back(tau);
        curve.values.push_back(ccov[idx] / norm);
    }
    return curve;
}

SemilogSlopes volatility_clustering_slopes(const ReturnSeries& returns, std::size_t fit_lo,
                                           std::size_t fit_hi) {
    if (fit_lo < 1 || fit_hi <= fit_lo)
        throw Error(ErrorCode::InvalidParameters, "fit range must satisfy 1 <= lo < hi");

    const auto& r = returns.values;
    const CorrelationCurve acf_r = autocorrelation(r, fit_hi, CurveKind::AcfReturns);

    std::vector<double> squares(r.size());
    kernels::squared_deviations(r.data(), r.size(), mean_of(r), squares.data());
    const CorrelationCurve acf_r2 = autocorrelation(squares, fit_hi, CurveKind::AcfVolatility);

    std::vector<double> log_tau;
    std::vector<double> vals_r, vals_r2;
    bool r2_nonpositive = false;
    for (std::size_t tau = fit_lo; tau <= fit_hi; ++tau) {
        if (acf_r2.values[tau] <= 0.0) r2_nonpositive = true;
        log_tau.push_back(std::log(static_cast<double>(tau)));
        vals_r.push_back(acf_r.values[tau]);
        vals_r2.push_back(acf_r2.values[tau]);
    }

    const RegressionResult reg_r = linear_fit(log_tau, vals_r);
    const RegressionResult reg_r2 = linear_fit(log_tau, vals_r2);

    // Report the decay rate: positive slope = correlation decaying with lag.
    SemilogSlopes out;
    out.r2_nonpositive_in_range = r2_nonpositive;
    out.slope_r = -reg_r.slope;
    out.slope_r_stderr = reg_r.slope_stderr;
    out.slope_r2 = -reg_r2.slope;
    out.slope_r2_stderr = reg_r2.slope_stderr;
    out.fit_lo = fit_lo;
    out.fit_hi = fit_hi;
    return out;
}

CorrelationCurve volume_volatility_correlation(const PriceSeries& series, std::size_t max_lag,
                                               VolatilityProxy proxy, std::size_t rolling_window,
                                               bool raw_moment) {
    if (!series.has_volume()) throw Error(ErrorCode::MissingVolume, "series has no volume column");

    const ReturnSeries r = log_returns(series, 1);
    const std::size_t n = r.size();

    std::vector<double> vol_proxy(n);
    if (proxy == VolatilityProxy::SquaredReturn) {
        kernels::squared_deviations(r.values.data(), n, mean_of(r.values), vol_proxy.data());
    } else {
        if (rolling_window < 2 || rolling_window > n)
            throw Error(ErrorCode::InvalidParameters, "rolling window out of range");
        // Centered rolling population variance of the returns.
        const std::size_t half = rolling_window / 2;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t lo = i > half ? i - half : 0;
            const std::size_t hi = std::min(n, lo + rolling_window);
            vol_proxy[i] = population_variance({r.values.data() + lo, hi - lo});
        }
    }

    // Volume of the bar over which return m accrues: volumes[m + 1].
    std::vector<double> volume(n);
    for (std::size_t m = 0; m < n; ++m) volume[m] = series.volumes[m + 1];

    if (n < 2 * max_lag + (proxy == VolatilityProxy::RollingVariance ? rolling_window : 0))
        throw Error(ErrorCode::SeriesTooShort, "volume/volatility window too short");

    return cross_correlation(volume, vol_proxy, max_lag, CurveKind::VolumeVolatility, raw_moment);
}

CoarseFineResult coarse_fine_correlation(const PriceSeries& series, std::size_t T,
                                         std::size_t max_lag) {
    if (T == 0) throw Error(ErrorCode::InvalidParameters, "T must be >= 1");
    if (series.size() <= T + max_lag)
        throw Error(ErrorCode::SeriesTooShort,
                    "need length > T + max_lag = " + std::to_string(T + max_lag));

    const ReturnSeries fine = log_returns(series, 1);
    const ReturnSeries coarse = log_returns(series, T);

    std::vector<double> coarse_sq(coarse.size());
    kernels::squared_deviations(coarse.values.data(), coarse.size(), mean_of(coarse.values),
                                coarse_sq.data());
    std::vector<double> fine_sq(fine.size());
    kernels::squared_deviations(fine.values.data(), fine.size(), mean_of(fine.values),
                                fine_sq.data());

    CoarseFineResult result;
    result.curve =
        cross_correlation(coarse_sq, fine_sq, max_lag, CurveKind::CoarseFine, false);
    for (std::size_t tau = 1; tau <= max_lag; ++tau) {
        const std::size_t pos = max_lag + tau;
        const std::size_t neg = max_lag - tau;
        result.delta_lags.push_back(static_cast<int>(tau));
        result.delta.push_back(result.curve.values[pos] - result.curve.values[neg]);
    }
    return result;
}

}  // namespace sfkit
