#include <doctest.h>

#include <cmath>
#include <vector>

#include "sfkit/errors.hpp"
#include "sfkit/persistence.hpp"
#include "sfkit/synth.hpp"

using namespace sfkit;

namespace {

PriceSeries series_from_prices(std::vector<double> prices) {
    std::vector<std::int64_t> ts(prices.size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = static_cast<std::int64_t>(i) * 60;
    return make_price_series(std::move(ts), std::move(prices), {}, 60);
}

// Independent per-start scan straight from the definition: the largest
// d <= max_duration with p[s+u] >= p[s] (resp. <=) for all u <= d.
void brute_force_curves(const std::vector<double>& prices, std::size_t max_duration,
                        std::vector<double>& p_plus, std::vector<double>& p_minus) {
    // Valid starts are [0, N - max_duration - 1] inclusive.
    const std::size_t n_starts = prices.size() - max_duration;
    p_plus.assign(max_duration, 0.0);
    p_minus.assign(max_duration, 0.0);
    for (std::size_t s = 0; s < n_starts; ++s) {
        std::size_t d_plus = max_duration, d_minus = max_duration;
        for (std::size_t u = 1; u <= max_duration; ++u) {
            if (prices[s + u] < prices[s]) {
                d_plus = u - 1;
                break;
            }
        }
        for (std::size_t u = 1; u <= max_duration; ++u) {
            if (prices[s + u] > prices[s]) {
                d_minus = u - 1;
                break;
            }
        }
        for (std::size_t t = 1; t <= max_duration; ++t) {
            if (d_plus >= t) p_plus[t - 1] += 1.0;
            if (d_minus >= t) p_minus[t - 1] += 1.0;
        }
    }
    for (auto& v : p_plus) v /= static_cast<double>(n_starts);
    for (auto& v : p_minus) v /= static_cast<double>(n_starts);
}

}  // namespace

TEST_CASE("persistence on monotone and constant prices") {
    std::vector<double> rising(200);
    for (std::size_t i = 0; i < rising.size(); ++i) rising[i] = 1.0 + static_cast<double>(i);
    const PersistenceCurve up = persistence_curve_exhaustive(series_from_prices(rising), 50);
    for (std::size_t i = 0; i < up.durations.size(); ++i) {
        CHECK(up.p_plus[i] == 1.0);   // every start censored on the + branch
        CHECK(up.p_minus[i] == 0.0);  // exits the <= branch at the first bar
        CHECK(up.p_global[i] == 0.5);
    }
    CHECK(up.censored_count == up.n_samples);

    const PersistenceCurve flat =
        persistence_curve_exhaustive(series_from_prices(std::vector<double>(100, 7.0)), 20);
    for (std::size_t i = 0; i < flat.durations.size(); ++i) {
        CHECK(flat.p_plus[i] == 1.0);  // ties persist on both branches
        CHECK(flat.p_minus[i] == 1.0);
        CHECK(flat.p_global[i] == 1.0);
    }
}

TEST_CASE("persistence curve structural invariants") {
    const PriceSeries walk = random_walk_prices(20000, 0.01, 0.0, false, 50);
    const PersistenceCurve curve = persistence_curve(walk, 5000, 200, 99);
    CHECK(curve.n_samples == 5000);
    for (std::size_t i = 0; i < curve.durations.size(); ++i) {
        CHECK(curve.p_global[i] == 0.5 * (curve.p_plus[i] + curve.p_minus[i]));
        if (i > 0) {
            CHECK(curve.p_plus[i] <= curve.p_plus[i - 1]);
            CHECK(curve.p_minus[i] <= curve.p_minus[i - 1]);
            CHECK(curve.p_global[i] <= curve.p_global[i - 1]);
        }
    }
    // Same seed, same curve.
    const PersistenceCurve again = persistence_curve(walk, 5000, 200, 99);
    CHECK(again.p_global == curve.p_global);
}

TEST_CASE("exhaustive persistence equals the brute-force scan") {
    const PriceSeries walk = random_walk_prices(1500, 0.7, 0.0, false, 51);
    const std::size_t max_duration = 100;
    const PersistenceCurve curve = persistence_curve_exhaustive(walk, max_duration);

    std::vector<double> p_plus, p_minus;
    brute_force_curves(walk.prices, max_duration, p_plus, p_minus);
    for (std::size_t i = 0; i < curve.durations.size(); ++i) {
        CHECK(curve.p_plus[i] == p_plus[i]);
        CHECK(curve.p_minus[i] == p_minus[i]);
    }
}

TEST_CASE("reciprocal prices swap the branches exactly") {
    const PriceSeries walk = random_walk_prices(3000, 0.5, 0.0, false, 52);
    std::vector<double> reciprocal(walk.prices.size());
    for (std::size_t i = 0; i < reciprocal.size(); ++i) reciprocal[i] = 1.0 / walk.prices[i];

    const PersistenceCurve a = persistence_curve_exhaustive(walk, 80);
    const PersistenceCurve b = persistence_curve_exhaustive(series_from_prices(reciprocal), 80);
    for (std::size_t i = 0; i < a.durations.size(); ++i) {
        CHECK(a.p_plus[i] == b.p_minus[i]);
        CHECK(a.p_minus[i] == b.p_plus[i]);
    }
}

TEST_CASE("persistence matches exhaustive enumeration over all short walks") {
    // All 2^n sign paths of length n: per path, the estimator with exhaustive
    // starts must equal the definition-level scan bit for bit.
    const std::size_t n = 14;
    const std::size_t max_duration = 6;
    std::vector<double> prices(n + 1);
    std::vector<double> walk(n + 1);

    std::vector<double> mean_estimator(max_duration, 0.0);
    std::vector<double> mean_oracle(max_duration, 0.0);

    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
        walk[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            walk[i + 1] = walk[i] + ((bits >> i) & 1 ? 1.0 : -1.0);
        for (std::size_t i = 0; i <= n; ++i) prices[i] = std::exp(walk[i]);

        const PersistenceCurve curve =
            persistence_curve_exhaustive(series_from_prices(prices), max_duration);
        std::vector<double> p_plus, p_minus;
        brute_force_curves(prices, max_duration, p_plus, p_minus);
        for (std::size_t i = 0; i < max_duration; ++i) {
            REQUIRE(curve.p_plus[i] == p_plus[i]);
            REQUIRE(curve.p_minus[i] == p_minus[i]);
            mean_estimator[i] += curve.p_global[i];
            mean_oracle[i] += 0.5 * (p_plus[i] + p_minus[i]);
        }
    }
    for (std::size_t i = 0; i < max_duration; ++i)
        CHECK(mean_estimator[i] == mean_oracle[i]);
}

TEST_CASE("fit_persistence_exponent on a planted power law") {
    PersistenceCurve curve;
    for (std::size_t t = 1; t <= 200; ++t) {
        curve.durations.push_back(t);
        const double pg = std::pow(static_cast<double>(t), -0.543);
        curve.p_plus.push_back(pg);
        curve.p_minus.push_back(pg);
        curve.p_global.push_back(pg);
        curve.n_at_risk.push_back(1000);
    }
    const PowerLawFit fit = fit_persistence_exponent(curve, 1, 100);
    CHECK(std::fabs(-fit.exponent - 0.543) < 1e-10);
}

TEST_CASE("random walk persistence exponent near one half") {
    // Sparre-Andersen: P(duration >= t) = C(2t, t) 4^-t for symmetric
    // continuous steps, independent of the step law.
    double theta_sum = 0.0;
    const int n_seeds = 3;
    for (int seed = 0; seed < n_seeds; ++seed) {
        const PriceSeries walk =
            random_walk_prices(200000, 0.001, 0.0, false, 60 + static_cast<std::uint64_t>(seed));
        const PersistenceCurve curve = persistence_curve(walk, 20000, 400, 7 + seed);
        const PowerLawFit fit = fit_persistence_exponent(curve, 1, 100);
        theta_sum += -fit.exponent;
    }
    const double theta = theta_sum / n_seeds;
    CHECK(theta > 0.45);
    CHECK(theta < 0.55);
}

TEST_CASE("persistence guards") {
    const PriceSeries tiny = random_walk_prices(50, 1.0, 0.0, false, 70);
    CHECK_THROWS_WITH_AS((void)persistence_curve(tiny, 100, 60, 1),
                         doctest::Contains("SeriesTooShort"), Error);

    PersistenceCurve sparse;
    for (std::size_t t = 1; t <= 10; ++t) {
        sparse.durations.push_back(t);
        sparse.p_plus.push_back(0.0);
        sparse.p_minus.push_back(0.0);
        sparse.p_global.push_back(0.0);
        sparse.n_at_risk.push_back(0);
    }
    CHECK_THROWS_WITH_AS((void)fit_persistence_exponent(sparse, 1, 10),
                         doctest::Contains("InsufficientRange"), Error);
}
