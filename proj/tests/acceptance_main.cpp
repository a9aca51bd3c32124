// Acceptance suite: one line per criterion, [PASS]/[FAIL]/[SKIP].
//
// Criteria 1-8 are self-contained property checks against synthetic
// ground-truth generators. Criteria 9-13 reproduce published BTC numbers and
// need user-supplied CSVs:
//   --daily PATH / SFKIT_BTC_DAILY    daily close prices
//   --minute PATH / SFKIT_BTC_MINUTE  minute close prices
// CSV columns default to timestamp,close; override with
// SFKIT_BTC_TS_COLUMN / SFKIT_BTC_PRICE_COLUMN. Missing datasets SKIP their
// criteria (the suite still exits 0); a failing criterion exits 1.

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "sfkit/correlation.hpp"
#include "sfkit/density.hpp"
#include "sfkit/errors.hpp"
#include "sfkit/moments.hpp"
#include "sfkit/numerics/rng.hpp"
#include "sfkit/persistence.hpp"
#include "sfkit/quakes.hpp"
#include "sfkit/series.hpp"
#include "sfkit/stats.hpp"
#include "sfkit/synth.hpp"

using namespace sfkit;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& label, const std::string& detail) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label
              << " — " << detail << '\n';
    if (!ok) ++failures;
}

void skip(int criterion, const std::string& label, const std::string& why) {
    std::cout << "[SKIP] criterion " << criterion << ": " << label << " — " << why << '\n';
}

void guarded(int criterion, const std::string& label, const std::function<void()>& body) {
    try {
        body();
    } catch (const std::exception& e) {
        report(criterion, false, label, std::string("exception: ") + e.what());
    }
}

// ---- criterion 1: spectral ACF equals the direct O(N^2) sum ---------------

void criterion_spectral_vs_direct() {
    Rng rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 64 + rng.uniform_index(2048 - 64 + 1);
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal() + 0.1;
        const std::size_t max_lag = n / 4;
        const CorrelationCurve fast = autocorrelation(x, max_lag);
        const CorrelationCurve direct = autocorrelation_direct(x, max_lag);
        for (std::size_t i = 0; i < fast.values.size(); ++i)
            worst = std::max(worst, std::fabs(fast.values[i] - direct.values[i]));
    }
    report(1, worst < 1e-9, "spectral-vs-direct autocorrelation",
           "max |diff| = " + std::to_string(worst) + " over 50 series (tol 1e-9)");
}

// ---- criterion 2: random-walk persistence ---------------------------------

void criterion_persistence_oracle() {
    // Small step scale keeps exp(log-price) inside double range over 1e6 bars.
    double theta_sum = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const PriceSeries walk = random_walk_prices(1000000, 0.001, 0.0, false, 210 + seed);
        const PersistenceCurve curve = persistence_curve(walk, 40000, 1000, 310 + seed);
        const PowerLawFit fit = fit_persistence_exponent(curve, 1, 100);
        theta_sum += -fit.exponent;
    }
    const double theta = theta_sum / 5.0;
    const bool theta_ok = theta >= 0.47 && theta <= 0.53;
    report(2, theta_ok, "random-walk persistence exponent",
           "theta_g = " + std::to_string(theta) + " (band [0.47, 0.53], Sparre-Andersen 1/2)");

    // Exhaustive-enumeration equality on all +/-1 walks of length <= 16.
    bool exact = true;
    for (std::size_t n : {8u, 12u, 16u}) {
        const std::size_t max_duration = n / 2;
        std::vector<double> walk(n + 1), prices(n + 1);
        for (std::uint64_t bits = 0; bits < (1ull << n) && exact; ++bits) {
            walk[0] = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                walk[i + 1] = walk[i] + ((bits >> i) & 1 ? 1.0 : -1.0);
            for (std::size_t i = 0; i <= n; ++i) prices[i] = std::exp(walk[i]);
            std::vector<std::int64_t> ts(n + 1);
            for (std::size_t i = 0; i <= n; ++i) ts[i] = static_cast<std::int64_t>(i);
            const PersistenceCurve curve = persistence_curve_exhaustive(
                make_price_series(ts, prices, {}, 1), max_duration);

            // Definition-level scan on the lattice walk itself.
            const std::size_t n_starts = n + 1 - max_duration;
            for (std::size_t t = 1; t <= max_duration && exact; ++t) {
                std::size_t plus = 0, minus = 0;
                for (std::size_t s = 0; s < n_starts; ++s) {
                    bool stays_up = true, stays_down = true;
                    for (std::size_t u = 1; u <= t; ++u) {
                        stays_up = stays_up && walk[s + u] >= walk[s];
                        stays_down = stays_down && walk[s + u] <= walk[s];
                    }
                    plus += stays_up;
                    minus += stays_down;
                }
                exact = exact &&
                        curve.p_plus[t - 1] ==
                            static_cast<double>(plus) / static_cast<double>(n_starts) &&
                        curve.p_minus[t - 1] ==
                            static_cast<double>(minus) / static_cast<double>(n_starts);
            }
        }
    }
    report(2, exact, "persistence exhaustive enumeration",
           exact ? "bit-exact on all walks of length 8, 12, 16" : "mismatch found");
}

// ---- criterion 3: Pareto tail exponents -----------------------------------

void criterion_pareto_tails() {
    bool ok = true;
    std::string detail;
    for (double alpha : {1.5, 2.0, 3.0}) {
        const ReturnSeries sample =
            pareto_tail_returns(100000, alpha, 1.0, 400 + static_cast<std::uint64_t>(10 * alpha));
        const PowerLawFit fit = fit_tail_exponent(ccdf(sample, TailBranch::Positive), 0.1);
        const double rel = std::fabs(fit.exponent + alpha) / alpha;
        ok = ok && rel < 0.10;
        detail += "alpha=" + std::to_string(alpha) + " -> " + std::to_string(-fit.exponent) + "  ";
    }
    report(3, ok, "Pareto tail exponents (10% rel)", detail);
}

// ---- criterion 4: Taylor law ----------------------------------------------

void criterion_taylor() {
    const PriceSeries walk = random_walk_prices(100000, 0.01, 0.001, false, 404);
    const PowerLawFit fit = taylor_law_fit(walk, {1, 2, 4, 8, 16, 32});
    const bool walk_ok = std::fabs(fit.exponent - 1.0) <= 0.05;

    std::vector<double> means, variances;
    for (int tau = 1; tau <= 10; ++tau) {
        means.push_back(static_cast<double>(tau));
        variances.push_back(2.0 * std::pow(static_cast<double>(tau), 0.916));
    }
    const PowerLawFit planted = taylor_fit_from_moments(means, variances);
    const bool planted_ok = std::fabs(planted.exponent - 0.916) < 1e-10 &&
                            std::fabs(planted.prefactor - 2.0) < 1e-10;

    report(4, walk_ok && planted_ok, "Taylor fluctuation scaling",
           "drifted walk lambda = " + std::to_string(fit.exponent) +
               " (1 +/- 0.05); planted lambda err = " +
               std::to_string(std::fabs(planted.exponent - 0.916)) + ", prefactor err = " +
               std::to_string(std::fabs(planted.prefactor - 2.0)) + " (tol 1e-10)");
}

// ---- criterion 5: Omori ----------------------------------------------------

void criterion_omori() {
    const double p_true = 0.8;
    const std::vector<double> counter = omori_expected_counter({500}, p_true, 5.0, 1.0, 20000);
    EventCatalog catalog;
    catalog.onsets = {500};
    catalog.magnitudes = {1.0};
    const OmoriFit noiseless = fit_omori(counter, catalog);
    const bool noiseless_ok = std::fabs(noiseless.p - p_true) < 1e-6;

    const std::vector<std::size_t> onsets = {1000, 12000, 22000};
    const ReturnSeries r = omori_process_returns(onsets, p_true, 6.0, 1.0, 30000, 505);
    EventCatalog stochastic_catalog;
    stochastic_catalog.onsets = onsets;
    stochastic_catalog.magnitudes = {1.0, 1.0, 1.0};
    const OmoriFit stochastic = fit_omori(event_counter(r, 3.0), stochastic_catalog);
    const bool stochastic_ok = std::fabs(stochastic.p - p_true) < 0.1;

    report(5, noiseless_ok && stochastic_ok, "Omori decay recovery",
           "noiseless |p - 0.8| = " + std::to_string(std::fabs(noiseless.p - p_true)) +
               " (tol 1e-6); thinned p = " + std::to_string(stochastic.p) + " (0.8 +/- 0.1)");
}

// ---- criterion 6: Gutenberg-Richter ----------------------------------------

void criterion_gutenberg_richter() {
    const double beta = 40.0;
    Rng rng(606);
    ReturnSeries r;
    r.values.resize(100000);
    for (auto& v : r.values)
        v = rng.exponential(beta) * (rng.next_u64() & 1 ? 1.0 : -1.0);
    const GutenbergRichterFit fit = fit_gutenberg_richter(r, 50, 10);
    const double expected_b = beta * std::log10(std::exp(1.0));
    const bool exponential_ok = std::fabs(fit.b - expected_b) / expected_b < 0.05;

    std::vector<double> thresholds, counts;
    for (int i = 0; i < 40; ++i) {
        const double m = 0.01 + 0.3 * i / 39.0;
        thresholds.push_back(m);
        counts.push_back(std::pow(10.0, 3.0 - 9.5 * m));
    }
    const GutenbergRichterFit planted = fit_gr_from_counts(thresholds, counts, 0.0);
    const bool planted_ok =
        std::fabs(planted.a - 3.0) < 1e-10 && std::fabs(planted.b - 9.5) < 1e-10;

    report(6, exponential_ok && planted_ok, "Gutenberg-Richter recovery",
           "exponential b = " + std::to_string(fit.b) + " vs " + std::to_string(expected_b) +
               " (5%); planted errs a " + std::to_string(std::fabs(planted.a - 3.0)) + ", b " +
               std::to_string(std::fabs(planted.b - 9.5)) + " (tol 1e-10)");
}

// ---- criterion 7: bootstrap kurtosis ---------------------------------------

void criterion_kurtosis() {
    const ReturnSeries gauss = gaussian_iid_returns(100000, 0.0, 1.0, 707);
    BootstrapConfig config;
    config.seed = 708;
    const BootstrapResult base = excess_kurtosis_bootstrap(gauss, config);
    const bool gauss_ok = std::fabs(base.mean) <= 2.0 * base.stderr;

    const PriceSeries t4 = prices_from_returns(student_t_iid_returns(300000, 4.0, 0.01, 709));
    config.seed = 710;
    const auto rows = kurtosis_by_scale(t4, {1, 8, 64, 256}, config);
    // Positive at tau=1 against the standard error of the bootstrap mean
    // (sd across subsamples / sqrt(n)), decaying toward 0 at large tau.
    const double front_se =
        rows.front().kurtosis_stderr / std::sqrt(static_cast<double>(config.n_samples));
    const bool t4_ok = rows.front().excess_kurtosis > 2.0 * front_se &&
                       rows.front().excess_kurtosis > rows.back().excess_kurtosis &&
                       std::fabs(rows.back().excess_kurtosis) < 1.0;

    report(7, gauss_ok && t4_ok, "bootstrap excess kurtosis",
           "gaussian mean = " + std::to_string(base.mean) + " +/- " + std::to_string(base.stderr) +
               "; t(4) tau=1 " + std::to_string(rows.front().excess_kurtosis) + " -> tau=256 " +
               std::to_string(rows.back().excess_kurtosis));
}

// ---- criterion 8: GARCH volatility clustering -------------------------------

void criterion_garch() {
    const ReturnSeries garch = garch11_returns(100000, 0.05, 0.1, 0.85, 808);
    const SemilogSlopes slopes = volatility_clustering_slopes(garch, 1, 50);
    const bool r_flat = std::fabs(slopes.slope_r) <= 3.0 * slopes.slope_r_stderr;
    const bool r2_decaying = slopes.slope_r2 > 3.0 * slopes.slope_r2_stderr;
    report(8, r_flat && r2_decaying, "GARCH clustering slopes",
           "slope_r = " + std::to_string(slopes.slope_r) + " +/- " +
               std::to_string(slopes.slope_r_stderr) + "; slope_r2 = " +
               std::to_string(slopes.slope_r2) + " +/- " + std::to_string(slopes.slope_r2_stderr));
}

// ---- criteria 9-13: BTC reproduction ----------------------------------------

PriceSeries load_btc(const std::string& path) {
    CsvSchema schema;
    if (const char* ts = std::getenv("SFKIT_BTC_TS_COLUMN")) schema.timestamp_column = ts;
    if (const char* price = std::getenv("SFKIT_BTC_PRICE_COLUMN")) schema.price_column = price;
    return load_csv(path, schema);
}

void criterion_btc_persistence(const std::string& daily, const std::string& minute) {
    const std::string label = "BTC persistence exponents";
    if (daily.empty() && minute.empty()) {
        skip(9, label, "needs SFKIT_BTC_DAILY / SFKIT_BTC_MINUTE");
        return;
    }
    std::string detail;
    bool ok = true;
    if (!daily.empty()) {
        const PriceSeries series = load_btc(daily);
        const PersistenceCurve curve = persistence_curve(
            series, 40000, std::min<std::size_t>(1000, series.size() / 2 - 1), 9001);
        const double theta = -fit_persistence_exponent(curve, 1, 100).exponent;
        ok = ok && std::fabs(theta - 0.471) <= 0.05;
        detail += "daily theta_g = " + std::to_string(theta) + " (0.471 +/- 0.05)  ";
    }
    if (!minute.empty()) {
        const PriceSeries series = load_btc(minute);
        const PersistenceCurve curve = persistence_curve(series, 40000, 1000, 9002);
        const double theta = -fit_persistence_exponent(curve, 1, 100).exponent;
        ok = ok && std::fabs(theta - 0.543) <= 0.05;
        detail += "minute theta_g = " + std::to_string(theta) + " (0.543 +/- 0.05)";
    }
    report(9, ok, label, detail);
}

void criterion_btc_taylor_plateau(const std::string& minute) {
    const std::string label = "BTC minute Taylor lambda and variance plateau";
    if (minute.empty()) {
        skip(10, label, "needs SFKIT_BTC_MINUTE");
        return;
    }
    const PriceSeries series = load_btc(minute);
    std::vector<std::size_t> taus;
    for (std::size_t tau = 1; tau <= 400; tau = tau < 8 ? tau + 1 : tau * 2) taus.push_back(tau);
    const PowerLawFit lambda = taylor_law_fit(series, taus);
    const bool lambda_ok = std::fabs(lambda.exponent - 0.916) <= 0.15;

    const ReturnSeries returns = log_returns(series, 1);
    const double plateau = population_variance(returns.values);
    const bool plateau_ok = plateau >= 0.35e-5 && plateau <= 1.4e-5;

    report(10, lambda_ok && plateau_ok, label,
           "lambda = " + std::to_string(lambda.exponent) + " (0.916 +/- 0.15); plateau = " +
               std::to_string(plateau) + " (0.7e-5 x/ 2)");
}

void criterion_btc_quakes(const std::string& minute) {
    const std::string label = "BTC minute Gutenberg-Richter and Omori";
    if (minute.empty()) {
        skip(11, label, "needs SFKIT_BTC_MINUTE");
        return;
    }
    const PriceSeries series = load_btc(minute);
    const ReturnSeries returns = log_returns(series, 1);

    const GutenbergRichterFit gr = fit_gutenberg_richter(returns, 50, 10);
    const bool gr_ok = std::fabs(gr.b - 9.5) <= 1.5 && std::fabs(gr.a - 3.0) <= 1.0;

    const std::size_t bars_per_day = static_cast<std::size_t>(
        std::max<std::int64_t>(1, 86400 / std::max<std::int64_t>(1, series.cadence_seconds)));
    const EventCatalog catalog = detect_onsets(returns, 3.0, bars_per_day);
    const OmoriFit omori = fit_omori(event_counter(returns, 3.0), catalog);
    const bool omori_ok = std::fabs(omori.p - 0.8) <= 0.2;

    report(11, gr_ok && omori_ok, label,
           "a = " + std::to_string(gr.a) + " (3 +/- 1), b = " + std::to_string(gr.b) +
               " (9.5 +/- 1.5); omori p = " + std::to_string(omori.p) + " (0.8 +/- 0.2)");
}

void criterion_btc_tails(const std::string& minute) {
    const std::string label = "BTC minute tail exponents";
    if (minute.empty()) {
        skip(12, label, "needs SFKIT_BTC_MINUTE");
        return;
    }
    const PriceSeries series = load_btc(minute);
    const ReturnSeries normalized = normalize(log_returns(series, 1));
    const double pos = fit_tail_exponent(ccdf(normalized, TailBranch::Positive), 0.1).exponent;
    const double neg = fit_tail_exponent(ccdf(normalized, TailBranch::Negative), 0.1).exponent;
    const bool ok = pos >= -3.6 && pos <= -2.4 && neg >= -2.6 && neg <= -1.4;
    report(12, ok, label,
           "positive = " + std::to_string(pos) + " ([-3.6, -2.4]); negative = " +
               std::to_string(neg) + " ([-2.6, -1.4])");
}

void criterion_btc_clustering(const std::string& daily) {
    const std::string label = "BTC daily volatility clustering and coarse-fine asymmetry";
    if (daily.empty()) {
        skip(13, label, "needs SFKIT_BTC_DAILY");
        return;
    }
    const PriceSeries series = load_btc(daily);
    const ReturnSeries returns = log_returns(series, 1);
    const SemilogSlopes slopes = volatility_clustering_slopes(returns, 1, 50);
    const bool r2_positive = slopes.slope_r2 > 0.0;
    const bool r_matches_paper =
        std::fabs(slopes.slope_r - 0.0113) <= 3.0 * std::max(slopes.slope_r_stderr, 1e-12);

    // Coarse horizon: one month of daily bars (the paper's T=4000 applies to
    // minute data); asymmetry band ~6/sqrt(n).
    const std::size_t T = 30;
    const CoarseFineResult cf = coarse_fine_correlation(series, T, 50);
    const double band = 6.0 / std::sqrt(static_cast<double>(series.size() - T));
    bool asymmetric = false;
    for (double d : cf.delta) asymmetric = asymmetric || std::fabs(d) > band;

    report(13, r2_positive && r_matches_paper && asymmetric, label,
           "slope_r = " + std::to_string(slopes.slope_r) + " +/- " +
               std::to_string(slopes.slope_r_stderr) + " (paper 0.0113 at 3 sigma); slope_r2 = " +
               std::to_string(slopes.slope_r2) + " (> 0); max |delta| vs band " +
               std::to_string(band));
}

}  // namespace

int main(int argc, char** argv) {
    std::string daily = std::getenv("SFKIT_BTC_DAILY") ? std::getenv("SFKIT_BTC_DAILY") : "";
    std::string minute = std::getenv("SFKIT_BTC_MINUTE") ? std::getenv("SFKIT_BTC_MINUTE") : "";
    for (int i = 1; i + 1 < argc; i += 2) {
        if (std::strcmp(argv[i], "--daily") == 0) daily = argv[i + 1];
        if (std::strcmp(argv[i], "--minute") == 0) minute = argv[i + 1];
    }

    guarded(1, "spectral-vs-direct autocorrelation", criterion_spectral_vs_direct);
    guarded(2, "random-walk persistence", criterion_persistence_oracle);
    guarded(3, "Pareto tail exponents", criterion_pareto_tails);
    guarded(4, "Taylor fluctuation scaling", criterion_taylor);
    guarded(5, "Omori decay recovery", criterion_omori);
    guarded(6, "Gutenberg-Richter recovery", criterion_gutenberg_richter);
    guarded(7, "bootstrap excess kurtosis", criterion_kurtosis);
    guarded(8, "GARCH clustering slopes", criterion_garch);
    guarded(9, "BTC persistence", [&] { criterion_btc_persistence(daily, minute); });
    guarded(10, "BTC Taylor/plateau", [&] { criterion_btc_taylor_plateau(minute); });
    guarded(11, "BTC quakes", [&] { criterion_btc_quakes(minute); });
    guarded(12, "BTC tails", [&] { criterion_btc_tails(minute); });
    guarded(13, "BTC clustering", [&] { criterion_btc_clustering(daily); });

    if (failures > 0) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all runnable criteria passed\n";
    return 0;
}
