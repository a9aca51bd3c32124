#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <vector>

#include "sfkit/errors.hpp"
#include "sfkit/numerics/rng.hpp"
#include "sfkit/quakes.hpp"
#include "sfkit/stats.hpp"
#include "sfkit/synth.hpp"

using namespace sfkit;

namespace {

ReturnSeries returns_of(std::vector<double> values) {
    ReturnSeries r;
    r.values = std::move(values);
    return r;
}

// Quiet background with spikes planted at given bars; spikes sit far above
// 3x the population std.
ReturnSeries spiky_series(std::size_t n, const std::vector<std::size_t>& spikes,
                          std::uint64_t seed) {
    Rng rng(seed);
    ReturnSeries r;
    r.values.resize(n);
    for (auto& v : r.values) v = 1e-3 * rng.normal();
    for (std::size_t s : spikes) r.values[s] = 1.0;
    return r;
}

}  // namespace

TEST_CASE("event_counter steps after each exceedance") {
    const ReturnSeries r = spiky_series(200, {50, 120}, 1);
    const std::vector<double> counter = event_counter(r, 3.0);
    REQUIRE(counter.size() == 201);
    CHECK(counter[0] == 0.0);
    CHECK(counter[50] == 0.0);    // strictly-prior convention
    CHECK(counter[51] == 1.0);
    CHECK(counter[120] == 1.0);
    CHECK(counter[121] == 2.0);
    CHECK(counter[200] == 2.0);

    // Non-decreasing; final value equals the brute-force count.
    const double r_th = 3.0 * std::sqrt(population_variance(r.values));
    std::size_t brute = 0;
    for (double v : r.values)
        if (std::fabs(v) > r_th) ++brute;
    CHECK(counter.back() == static_cast<double>(brute));
    for (std::size_t t = 1; t < counter.size(); ++t) CHECK(counter[t] >= counter[t - 1]);
}

TEST_CASE("event_counter with no exceedances is identically zero") {
    const ReturnSeries r = gaussian_iid_returns(500, 0.0, 1.0, 2);
    const std::vector<double> counter = event_counter(r, 100.0);
    for (double v : counter) CHECK(v == 0.0);

    CHECK_THROWS_WITH_AS((void)event_counter(returns_of({1.0, 1.0, 1.0}), 3.0),
                         doctest::Contains("ZeroVariance"), Error);
}

TEST_CASE("event_counter matches the normal tail mass") {
    const ReturnSeries g = gaussian_iid_returns(100000, 0.0, 1.0, 3);
    const std::vector<double> counter = event_counter(g, 3.0);
    // 2(1 - Phi(3)) * n ~ 270.
    CHECK(counter.back() > 220.0);
    CHECK(counter.back() < 320.0);
}

TEST_CASE("detect_onsets declusters") {
    const ReturnSeries r = spiky_series(600, {100, 101, 500}, 4);
    const EventCatalog catalog = detect_onsets(r, 3.0, 50);
    REQUIRE(catalog.onsets.size() == 2);
    CHECK(catalog.onsets[0] == 100);
    CHECK(catalog.onsets[1] == 500);
    CHECK(catalog.magnitudes[0] == doctest::Approx(1.0));

    // No exceedances -> empty catalog.
    const ReturnSeries quiet = gaussian_iid_returns(300, 0.0, 1.0, 5);
    CHECK(detect_onsets(quiet, 50.0, 10).onsets.empty());
}

TEST_CASE("detect_onsets deterministic and sign-invariant") {
    const ReturnSeries r = spiky_series(2000, {100, 130, 900, 1500}, 6);
    ReturnSeries flipped;
    flipped.values = r.values;
    for (auto& v : flipped.values) v = -v;
    const EventCatalog a = detect_onsets(r, 3.0, 100);
    const EventCatalog b = detect_onsets(flipped, 3.0, 100);
    CHECK(a.onsets == b.onsets);
    CHECK(a.magnitudes == b.magnitudes);
}

TEST_CASE("fit_omori recovers a planted noiseless model") {
    const double p_true = 0.8, c_true = 5.0;
    const std::vector<std::size_t> onsets = {100};
    const std::vector<double> counter = omori_expected_counter(onsets, p_true, c_true, 1.0, 5000);

    EventCatalog catalog;
    catalog.onsets = {100};
    catalog.magnitudes = {1.0};
    const OmoriFit fit = fit_omori(counter, catalog);
    CHECK(fit.converged);
    CHECK(std::fabs(fit.p - p_true) < 1e-6);
    CHECK(std::fabs(fit.amplitudes[0] - c_true) < 1e-4);
    CHECK(fit.residual_norm < 1e-8);
}

TEST_CASE("fit_omori multi-onset planted model and translation invariance") {
    const double p_true = 0.7;
    const std::vector<std::size_t> onsets = {200, 1500};
    std::vector<double> counter(4000, 0.0);
    {
        const auto a = omori_expected_counter({200}, p_true, 3.0, 1.0, 4000);
        const auto b = omori_expected_counter({1500}, p_true, 8.0, 1.0, 4000);
        for (std::size_t t = 0; t < counter.size(); ++t) counter[t] = a[t] + b[t];
    }
    EventCatalog catalog;
    catalog.onsets = onsets;
    catalog.magnitudes = {1.0, 1.0};
    const OmoriFit fit = fit_omori(counter, catalog);
    CHECK(std::fabs(fit.p - p_true) < 1e-6);
    CHECK(std::fabs(fit.amplitudes[0] - 3.0) < 1e-3);
    CHECK(std::fabs(fit.amplitudes[1] - 8.0) < 1e-3);

    // Shift everything by 500 bars: same p.
    std::vector<double> shifted(counter.size() + 500, 0.0);
    for (std::size_t t = 0; t < counter.size(); ++t) shifted[t + 500] = counter[t];
    EventCatalog shifted_catalog;
    shifted_catalog.onsets = {700, 2000};
    shifted_catalog.magnitudes = {1.0, 1.0};
    const OmoriFit shifted_fit = fit_omori(shifted, shifted_catalog);
    CHECK(std::fabs(shifted_fit.p - fit.p) < 1e-6);
}

TEST_CASE("fit_omori on a thinned stochastic process") {
    const std::vector<std::size_t> onsets = {1000, 12000, 22000};
    const double p_true = 0.8;
    const ReturnSeries r = omori_process_returns(onsets, p_true, 6.0, 1.0, 30000, 7);

    const std::vector<double> counter = event_counter(r, 3.0);
    EventCatalog catalog;
    catalog.onsets = onsets;
    catalog.magnitudes = {1.0, 1.0, 1.0};
    const OmoriFit fit = fit_omori(counter, catalog);
    CHECK(std::fabs(fit.p - p_true) < 0.1);
}

TEST_CASE("fit_omori guards") {
    EventCatalog empty;
    CHECK_THROWS_WITH_AS((void)fit_omori({0.0, 1.0}, empty), doctest::Contains("NoOnsets"),
                         Error);

    EventCatalog catalog;
    catalog.onsets = {10};
    catalog.magnitudes = {1.0};
    CHECK_THROWS_AS((void)fit_omori({0.0, 1.0}, catalog), Error);  // counter too short
}

TEST_CASE("fit_gr_from_counts recovers a planted line exactly") {
    std::vector<double> thresholds, counts;
    for (int i = 0; i < 40; ++i) {
        const double m = 0.01 + 0.3 * i / 39.0;
        thresholds.push_back(m);
        counts.push_back(std::pow(10.0, 3.0 - 9.5 * m));
    }
    const GutenbergRichterFit fit = fit_gr_from_counts(thresholds, counts, 0.0);
    CHECK(std::fabs(fit.a - 3.0) < 1e-10);
    CHECK(std::fabs(fit.b - 9.5) < 1e-10);
}

TEST_CASE("fit_gutenberg_richter on exponential magnitudes") {
    // |r| ~ Exp(beta): N(M)/n = exp(-beta M), so b = beta log10(e).
    const double beta = 40.0;
    Rng rng(8);
    ReturnSeries r;
    r.values.resize(100000);
    for (auto& v : r.values) {
        const double magnitude = rng.exponential(beta);
        v = rng.next_u64() & 1 ? magnitude : -magnitude;
    }
    const GutenbergRichterFit fit = fit_gutenberg_richter(r, 50, 10);
    const double expected_b = beta * std::log10(std::exp(1.0));
    CHECK(std::fabs(fit.b - expected_b) / expected_b < 0.05);
    CHECK(fit.stderr_b < 1.0);
}

TEST_CASE("fit_gutenberg_richter tail locality with a fixed window") {
    Rng rng(9);
    ReturnSeries r;
    r.values.resize(20000);
    for (auto& v : r.values) v = rng.exponential(30.0) * (rng.next_u64() & 1 ? 1.0 : -1.0);

    double m_max = 0.0;
    for (double v : r.values) m_max = std::max(m_max, std::fabs(v));
    const GutenbergRichterFit base = fit_gutenberg_richter(r, 40, 10, 0.0, m_max);

    // Append events strictly below the lowest *fitted* threshold.
    ReturnSeries extended = r;
    const double below = base.fit_lo > 0.0 ? base.fit_lo * 0.5 : 1e-6;
    for (int i = 0; i < 500; ++i) extended.values.push_back(below * 0.9);

    // Counts at thresholds >= fit_lo are unchanged only above the appended
    // magnitude; restrict both fits to the shared window to compare exactly.
    if (base.fit_lo > below) {
        const GutenbergRichterFit fixed_a =
            fit_gutenberg_richter(r, 40, 10, base.fit_lo, m_max);
        const GutenbergRichterFit fixed_b =
            fit_gutenberg_richter(extended, 40, 10, base.fit_lo, m_max);
        CHECK(fixed_a.b == fixed_b.b);
        CHECK(fixed_a.a == fixed_b.a);
    }
}

TEST_CASE("catalog round trip") {
    EventCatalog catalog;
    catalog.onsets = {5, 99, 1234};
    catalog.magnitudes = {0.5, 0.25, 1.5};
    catalog.threshold = 0.1;
    catalog.min_gap = 10;
    const auto path = (std::filesystem::temp_directory_path() / "sfkit_catalog.csv").string();
    save_catalog_csv(catalog, path);
    const EventCatalog loaded = load_catalog_csv(path, 0.1, 10);
    CHECK(loaded.onsets == catalog.onsets);
    for (std::size_t i = 0; i < loaded.magnitudes.size(); ++i)
        CHECK(loaded.magnitudes[i] == doctest::Approx(catalog.magnitudes[i]));
}

TEST_CASE("detect_onsets recovers planted onsets exactly") {
    // Aftershock exceedances confined to the min_gap window of each onset.
    Rng rng(10);
    ReturnSeries r;
    r.values.resize(8000);
    for (auto& v : r.values) v = 1e-3 * rng.normal();
    const std::vector<std::size_t> planted = {1000, 5000};
    for (std::size_t t0 : planted) {
        r.values[t0] = 1.0;
        for (std::size_t u = 1; u < 200; ++u)
            if (rng.uniform01() < 0.05) r.values[t0 + u] = 0.5;
    }
    const EventCatalog catalog = detect_onsets(r, 3.0, 200);
    REQUIRE(catalog.onsets.size() == 2);
    CHECK(catalog.onsets[0] == 1000);
    CHECK(catalog.onsets[1] == 5000);
}
