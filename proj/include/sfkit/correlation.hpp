#pragma once

#include <span>
#include <vector>

#include "sfkit/series.hpp"

namespace sfkit {

enum class CurveKind { AcfReturns, AcfVolatility, VolumeVolatility, CoarseFine };

struct CorrelationCurve {
    std::vector<int> lags;       // strictly increasing; negative allowed
    std::vector<double> values;  // correlation-coefficient units by default
    CurveKind kind = CurveKind::AcfReturns;
};

// Spectral (FFT-based) autocorrelation of a mean-removed signal, zero-padded
// to at least 2N against circular wrap-around, normalized to A(0) = 1.
CorrelationCurve autocorrelation(std::span<const double> signal, std::size_t max_lag,
                                 CurveKind kind = CurveKind::AcfReturns);

// Direct O(N^2) reference: sum_t (x_t - xbar)(x_{t+tau} - xbar) / lag-0 sum.
// Kept as the independent check for the spectral path.
CorrelationCurve autocorrelation_direct(std::span<const double> signal, std::size_t max_lag,
                                        CurveKind kind = CurveKind::AcfReturns);

// Normalized cross-correlation for lags -max_lag..max_lag, computed
// spectrally. value(tau) pairs x(t+tau) with y(t):
//   C(tau) = sum_t (x_{t+tau} - xbar)(y_t - ybar) / (N sx sy).
CorrelationCurve cross_correlation(std::span<const double> x, std::span<const double> y,
                                   std::size_t max_lag, CurveKind kind,
                                   bool raw_moment = false);

struct SemilogSlopes {
    // Decay slope s of the model A(tau) = a - s log(tau); positive s means
    // the correlation decays with lag.
    double slope_r = 0.0;
    double slope_r_stderr = 0.0;
    double slope_r2 = 0.0;
    double slope_r2_stderr = 0.0;
    std::size_t fit_lo = 1;
    std::size_t fit_hi = 1;
    // The r^2 curve dipped <= 0 inside the fit range; the r^2 slope then has
    // no persistence reading.
    bool r2_nonpositive_in_range = false;
};

// Semilog decay slopes of the return and squared-return autocorrelations
// over lag range [lo, hi].
SemilogSlopes volatility_clustering_slopes(const ReturnSeries& returns, std::size_t fit_lo,
                                           std::size_t fit_hi);

enum class VolatilityProxy { SquaredReturn, RollingVariance };

// Cross-correlation of volume against a volatility proxy; value at lag tau
// pairs volume(t+tau) with sigma^2(t).
CorrelationCurve volume_volatility_correlation(const PriceSeries& series, std::size_t max_lag,
                                               VolatilityProxy proxy = VolatilityProxy::SquaredReturn,
                                               std::size_t rolling_window = 20,
                                               bool raw_moment = false);

struct CoarseFineResult {
    CorrelationCurve curve;          // lags -max_lag..max_lag
    std::vector<int> delta_lags;     // 1..max_lag
    std::vector<double> delta;       // C(tau) - C(-tau)
};

// Correlation of coarse-grained (horizon T) squared deviations against
// fine-scale squared deviations, plus the asymmetry statistic.
CoarseFineResult coarse_fine_correlation(const PriceSeries& series, std::size_t T,
                                         std::size_t max_lag);

}  // namespace sfkit
