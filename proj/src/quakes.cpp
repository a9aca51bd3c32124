#include "sfkit/quakes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/numerics/regression.hpp"
#include "sfkit/stats.hpp"

namespace sfkit {

namespace {

double exceedance_threshold(const ReturnSeries& returns, double threshold_sigmas) {
    if (!(threshold_sigmas > 0.0))
        throw Error(ErrorCode::InvalidParameters, "threshold_sigmas must be > 0");
    const double variance = population_variance(returns.values);
    if (variance <= 0.0) throw Error(ErrorCode::ZeroVariance, "threshold undefined");
    return threshold_sigmas * std::sqrt(variance);
}

}  // namespace

std::vector<double> event_counter(const ReturnSeries& returns, double threshold_sigmas) {
    const double r_th = exceedance_threshold(returns, threshold_sigmas);
    const auto& r = returns.values;

    std::vector<double> counter(r.size() + 1, 0.0);
    double count = 0.0;
    for (std::size_t t = 0; t < r.size(); ++t) {
        counter[t] = count;
        if (std::fabs(r[t]) > r_th) count += 1.0;  // strict exceedance, Theta(0)=0
    }
    counter[r.size()] = count;
    return counter;
}

EventCatalog detect_onsets(const ReturnSeries& returns, double threshold_sigmas,
                           std::size_t min_gap) {
    if (min_gap == 0) throw Error(ErrorCode::InvalidParameters, "min_gap must be >= 1");
    const double r_th = exceedance_threshold(returns, threshold_sigmas);
    const auto& r = returns.values;

    EventCatalog catalog;
    catalog.threshold = r_th;
    catalog.min_gap = min_gap;
    bool have_onset = false;
    std::size_t last_onset = 0;
    for (std::size_t t = 0; t < r.size(); ++t) {
        if (std::fabs(r[t]) <= r_th) continue;
        if (have_onset && t - last_onset < min_gap) continue;
        const std::size_t window_end = std::min(r.size(), t + min_gap);
        double magnitude = 0.0;
        for (std::size_t u = t; u < window_end; ++u)
            magnitude = std::max(magnitude, std::fabs(r[u]));
        catalog.onsets.push_back(t);
        catalog.magnitudes.push_back(magnitude);
        last_onset = t;
        have_onset = true;
    }
    return catalog;
}

OmoriFit fit_omori(const std::vector<double>& counter, const EventCatalog& catalog,
                   double delta, const LmOptions& options) {
    if (catalog.onsets.empty()) throw Error(ErrorCode::NoOnsets, "empty catalog");
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidParameters, "delta must be > 0");
    const std::size_t horizon = counter.size();
    if (horizon == 0 || catalog.onsets.back() >= horizon)
        throw Error(ErrorCode::InvalidParameters, "counter does not cover all onsets");

    const std::size_t n_onsets = catalog.onsets.size();
    const double total = counter.back();

    // Parameters: [p, log c_0, ..., log c_{K-1}].
    // Initial amplitudes split the count growth after each onset.
    const double p0 = 0.9;
    std::vector<double> initial(1 + n_onsets);
    initial[0] = p0;
    for (std::size_t k = 0; k < n_onsets; ++k) {
        const std::size_t t0 = catalog.onsets[k];
        const std::size_t t1 = k + 1 < n_onsets ? catalog.onsets[k + 1] : horizon - 1;
        const double gained = std::max(counter[t1] - counter[t0], 1.0);
        const double span = std::pow(static_cast<double>(horizon - 1 - t0) + delta, 1.0 - p0);
        initial[1 + k] = std::log(std::max(gained / std::max(span, 1e-12), 1e-6));
    }
    (void)total;

    auto model_terms = [&](const std::vector<double>& params, std::size_t t, double* value,
                           double* d_p, std::vector<double>* d_logc) {
        const double p = params[0];
        double v = 0.0, dp = 0.0;
        for (std::size_t k = 0; k < n_onsets; ++k) {
            const std::size_t t0 = catalog.onsets[k];
            if (t <= t0) continue;  // Theta(0) = 0
            const double dt = static_cast<double>(t - t0) + delta;
            const double c = std::exp(params[1 + k]);
            const double term = c * std::pow(dt, 1.0 - p);
            v += term;
            dp += -std::log(dt) * term;
            if (d_logc) (*d_logc)[k] = term;
        }
        *value = v;
        if (d_p) *d_p = dp;
    };

    NlsProblem problem;
    problem.initial_parameters = initial;
    problem.residual = [&, horizon](const std::vector<double>& params) {
        std::vector<double> res(horizon);
        for (std::size_t t = 0; t < horizon; ++t) {
            double v;
            model_terms(params, t, &v, nullptr, nullptr);
            res[t] = v - counter[t];
        }
        return res;
    };
    problem.jacobian = [&, horizon](const std::vector<double>& params) {
        const std::size_t p_count = params.size();
        std::vector<double> jac(horizon * p_count, 0.0);
        std::vector<double> d_logc(n_onsets);
        for (std::size_t t = 0; t < horizon; ++t) {
            std::fill(d_logc.begin(), d_logc.end(), 0.0);
            double v, dp;
            model_terms(params, t, &v, &dp, &d_logc);
            jac[t * p_count] = dp;
            for (std::size_t k = 0; k < n_onsets; ++k) jac[t * p_count + 1 + k] = d_logc[k];
        }
        return jac;
    };

    const LmResult lm = levenberg_marquardt(problem, options);

    OmoriFit fit;
    fit.p = lm.parameters[0];
    fit.amplitudes.resize(n_onsets);
    for (std::size_t k = 0; k < n_onsets; ++k) fit.amplitudes[k] = std::exp(lm.parameters[1 + k]);
    fit.residual_norm = lm.residual_norm;
    fit.iterations = lm.iterations;
    fit.converged = lm.converged;
    return fit;
}

GutenbergRichterFit fit_gr_from_counts(const std::vector<double>& thresholds,
                                       const std::vector<double>& counts, double min_count) {
    if (thresholds.size() != counts.size())
        throw Error(ErrorCode::LengthMismatch, "thresholds vs counts");

    std::vector<double> ms, log_counts;
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (counts[i] < min_count) continue;
        ms.push_back(thresholds[i]);
        log_counts.push_back(std::log10(counts[i]));
    }
    if (ms.size() < 3)
        throw Error(ErrorCode::InsufficientData,
                    "only " + std::to_string(ms.size()) + " thresholds above min_count");
    if (std::all_of(ms.begin(), ms.end(), [&](double v) { return v == ms.front(); }))
        throw Error(ErrorCode::DegenerateRegression, "all magnitudes equal");

    const RegressionResult reg = linear_fit(ms, log_counts);

    GutenbergRichterFit fit;
    fit.a = reg.intercept;
    fit.b = -reg.slope;
    fit.stderr_b = reg.slope_stderr;
    fit.fit_lo = ms.front();
    fit.fit_hi = ms.back();
    fit.n_points = ms.size();
    return fit;
}

namespace {

GutenbergRichterFit gr_impl(const ReturnSeries& returns, std::size_t n_thresholds,
                            std::size_t min_count, double m_lo, double m_hi) {
    if (n_thresholds < 3)
        throw Error(ErrorCode::InvalidParameters, "need >= 3 thresholds");
    if (returns.size() < min_count)
        throw Error(ErrorCode::InsufficientData,
                    std::to_string(returns.size()) + " observations < min_count");

    const auto& r = returns.values;
    std::vector<double> thresholds(n_thresholds), counts(n_thresholds);
    const double step = (m_hi - m_lo) / static_cast<double>(n_thresholds - 1);
    for (std::size_t i = 0; i < n_thresholds; ++i) {
        thresholds[i] = m_lo + static_cast<double>(i) * step;
        counts[i] = static_cast<double>(
            kernels::count_abs_geq(r.data(), r.size(), thresholds[i]));
    }
    return fit_gr_from_counts(thresholds, counts, static_cast<double>(min_count));
}

}  // namespace

GutenbergRichterFit fit_gutenberg_richter(const ReturnSeries& returns, std::size_t n_thresholds,
                                          std::size_t min_count) {
    double m_max = 0.0;
    for (double v : returns.values) m_max = std::max(m_max, std::fabs(v));
    if (!(m_max > 0.0)) throw Error(ErrorCode::ZeroVariance, "all magnitudes zero");
    return gr_impl(returns, n_thresholds, min_count, 0.0, m_max);
}

GutenbergRichterFit fit_gutenberg_richter(const ReturnSeries& returns, std::size_t n_thresholds,
                                          std::size_t min_count, double m_lo, double m_hi) {
    if (!(m_lo < m_hi)) throw Error(ErrorCode::InvalidParameters, "need m_lo < m_hi");
    return gr_impl(returns, n_thresholds, min_count, m_lo, m_hi);
}

void save_catalog_csv(const EventCatalog& catalog, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::FileNotFound, "cannot write " + path);
    file << "onset_index,magnitude\n";
    for (std::size_t k = 0; k < catalog.onsets.size(); ++k)
        file << catalog.onsets[k] << ',' << catalog.magnitudes[k] << '\n';
}

EventCatalog load_catalog_csv(const std::string& path, double threshold, std::size_t min_gap) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::FileNotFound, path);

    EventCatalog catalog;
    catalog.threshold = threshold;
    catalog.min_gap = min_gap;

    std::string line;
    if (!std::getline(file, line)) throw Error(ErrorCode::ParseError, "empty catalog " + path);
    std::size_t row = 0;
    while (std::getline(file, line)) {
        ++row;
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string idx_text, mag_text;
        if (!std::getline(ss, idx_text, ',') || !std::getline(ss, mag_text))
            throw Error(ErrorCode::ParseError, "catalog row " + std::to_string(row));
        try {
            catalog.onsets.push_back(std::stoull(idx_text));
            catalog.magnitudes.push_back(std::stod(mag_text));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, "catalog row " + std::to_string(row));
        }
        if (catalog.onsets.size() > 1 &&
            catalog.onsets[catalog.onsets.size() - 2] >= catalog.onsets.back())
            throw Error(ErrorCode::ParseError, "onsets not increasing at row " + std::to_string(row));
    }
    if (catalog.onsets.empty()) throw Error(ErrorCode::NoOnsets, path);
    return catalog;
}

}  // namespace sfkit
