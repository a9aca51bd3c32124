#include "sfkit/synth.hpp"

#include <cmath>

#include "sfkit/errors.hpp"
#include "sfkit/numerics/rng.hpp"

namespace sfkit {

namespace {

double param_or(const GeneratorSpec& spec, const std::string& key, double fallback) {
    const auto it = spec.parameters.find(key);
    return it == spec.parameters.end() ? fallback : it->second;
}

std::vector<std::int64_t> unit_timestamps(std::size_t n, std::int64_t cadence) {
    std::vector<std::int64_t> ts(n);
    for (std::size_t i = 0; i < n; ++i) ts[i] = static_cast<std::int64_t>(i) * cadence;
    return ts;
}

}  // namespace

GeneratorFamily generator_family_from_name(const std::string& name) {
    if (name == "gaussian-iid") return GeneratorFamily::GaussianIid;
    if (name == "student-t-iid") return GeneratorFamily::StudentTIid;
    if (name == "pareto-tail") return GeneratorFamily::ParetoTail;
    if (name == "garch-1-1") return GeneratorFamily::Garch11;
    if (name == "random-walk-prices") return GeneratorFamily::RandomWalkPrices;
    if (name == "omori-process") return GeneratorFamily::OmoriProcess;
    if (name == "planted-lag-pair") return GeneratorFamily::PlantedLagPair;
    throw Error(ErrorCode::InvalidParameters, "unknown generator family '" + name + "'");
}

const char* generator_family_name(GeneratorFamily family) {
    switch (family) {
        case GeneratorFamily::GaussianIid: return "gaussian-iid";
        case GeneratorFamily::StudentTIid: return "student-t-iid";
        case GeneratorFamily::ParetoTail: return "pareto-tail";
        case GeneratorFamily::Garch11: return "garch-1-1";
        case GeneratorFamily::RandomWalkPrices: return "random-walk-prices";
        case GeneratorFamily::OmoriProcess: return "omori-process";
        case GeneratorFamily::PlantedLagPair: return "planted-lag-pair";
    }
    return "unknown";
}

ReturnSeries gaussian_iid_returns(std::size_t length, double mu, double sigma,
                                  std::uint64_t seed) {
    if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidParameters, "sigma must be > 0");
    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(length);
    for (auto& v : out.values) v = rng.normal(mu, sigma);
    return out;
}

ReturnSeries student_t_iid_returns(std::size_t length, double dof, double scale,
                                   std::uint64_t seed) {
    if (!(dof > 0.0) || !(scale > 0.0))
        throw Error(ErrorCode::InvalidParameters, "dof and scale must be > 0");
    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(length);
    for (auto& v : out.values) v = scale * rng.student_t(dof);
    return out;
}

ReturnSeries pareto_tail_returns(std::size_t length, double alpha, double x_min,
                                 std::uint64_t seed) {
    if (!(alpha > 0.0) || !(x_min > 0.0))
        throw Error(ErrorCode::InvalidParameters, "alpha and x_min must be > 0");
    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(length);
    for (auto& v : out.values) v = rng.pareto(alpha, x_min);
    return out;
}

ReturnSeries garch11_returns(std::size_t length, double omega, double alpha, double beta,
                             std::uint64_t seed) {
    if (!(omega > 0.0) || alpha < 0.0 || beta < 0.0 || alpha + beta >= 1.0)
        throw Error(ErrorCode::InvalidParameters,
                    "GARCH requires omega > 0, alpha,beta >= 0, alpha + beta < 1");
    Rng rng(seed);
    const std::size_t burn_in = 1000;
    double variance = omega / (1.0 - alpha - beta);  // start at the stationary level
    double prev_r2 = variance;

    ReturnSeries out;
    out.values.resize(length);
    for (std::size_t i = 0; i < burn_in + length; ++i) {
        variance = omega + alpha * prev_r2 + beta * variance;
        const double r = std::sqrt(variance) * rng.normal();
        prev_r2 = r * r;
        if (i >= burn_in) out.values[i - burn_in] = r;
    }
    return out;
}

PriceSeries random_walk_prices(std::size_t length, double sigma, double drift, bool plus_minus,
                               std::uint64_t seed) {
    if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidParameters, "sigma must be > 0");
    Rng rng(seed);
    std::vector<double> prices(length);
    double log_price = 0.0;
    for (std::size_t i = 0; i < length; ++i) {
        prices[i] = std::exp(log_price);
        const double step = plus_minus ? (rng.next_u64() & 1 ? sigma : -sigma)
                                       : sigma * rng.normal();
        log_price += drift + step;
    }
    return make_price_series(unit_timestamps(length, 60), std::move(prices), {}, 60);
}

std::vector<double> omori_expected_counter(const std::vector<std::size_t>& onsets, double p,
                                           double amplitude, double delta, std::size_t length) {
    if (onsets.empty()) throw Error(ErrorCode::NoOnsets, "need at least one onset");
    if (!(amplitude > 0.0) || !(delta > 0.0))
        throw Error(ErrorCode::InvalidParameters, "amplitude and delta must be > 0");
    std::vector<double> counter(length, 0.0);
    for (std::size_t t = 0; t < length; ++t) {
        double v = 0.0;
        for (std::size_t t0 : onsets)
            if (t > t0) v += amplitude * std::pow(static_cast<double>(t - t0) + delta, 1.0 - p);
        counter[t] = v;
    }
    return counter;
}

ReturnSeries omori_process_returns(const std::vector<std::size_t>& onsets, double p,
                                   double amplitude, double delta, std::size_t length,
                                   std::uint64_t seed) {
    if (!(p < 1.0))
        throw Error(ErrorCode::InvalidParameters,
                    "thinned realization needs p < 1 (increasing counter)");
    const std::vector<double> expected = omori_expected_counter(onsets, p, amplitude, delta, length);

    Rng rng(seed);
    ReturnSeries out;
    out.values.resize(length);
    // Sub-threshold noise everywhere; spikes where a thinned event fires.
    // Spike size 1.0 vs noise 1e-3 keeps 3 sigma well between the two.
    for (std::size_t t = 0; t < length; ++t) {
        const double increment = expected[t] - (t > 0 ? expected[t - 1] : 0.0);
        const bool event = rng.uniform01() < std::min(increment, 1.0);
        const double sign = rng.next_u64() & 1 ? 1.0 : -1.0;
        out.values[t] = event ? sign * 1.0 : sign * 1e-3 * rng.uniform01();
    }
    for (std::size_t t0 : onsets)
        if (t0 < length) out.values[t0] = 1.0;  // the main shock itself
    return out;
}

PriceSeries planted_lag_pair(std::size_t length, std::size_t lag, double sigma,
                             std::uint64_t seed) {
    if (!(sigma > 0.0)) throw Error(ErrorCode::InvalidParameters, "sigma must be > 0");
    if (length < lag + 3) throw Error(ErrorCode::InvalidParameters, "length too short for lag");
    Rng rng(seed);

    // Returns r[0..length-2]; volume of bar m+1 equals r[m+1-lag]^2 so the
    // volume/volatility cross-correlation peaks at +lag.
    std::vector<double> returns(length - 1);
    for (auto& r : returns) r = sigma * rng.normal();

    std::vector<double> prices(length);
    std::vector<double> volumes(length);
    double log_price = 0.0;
    prices[0] = std::exp(log_price);
    volumes[0] = 0.0;
    for (std::size_t m = 0; m < returns.size(); ++m) {
        log_price += returns[m];
        prices[m + 1] = std::exp(log_price);
        const std::size_t source = m >= lag ? m - lag : 0;
        volumes[m + 1] = returns[source] * returns[source];
    }
    return make_price_series(unit_timestamps(length, 60), std::move(prices), std::move(volumes),
                             60);
}

PriceSeries prices_from_returns(const ReturnSeries& returns, double initial_price,
                                std::int64_t cadence_seconds) {
    const std::size_t n = returns.size() + 1;
    std::vector<double> prices(n);
    double log_price = std::log(initial_price);
    prices[0] = initial_price;
    for (std::size_t i = 0; i < returns.size(); ++i) {
        log_price += returns.values[i];
        prices[i + 1] = std::exp(log_price);
    }
    return make_price_series(unit_timestamps(n, cadence_seconds), std::move(prices), {},
                             cadence_seconds);
}

SynthSeries generate(const GeneratorSpec& spec) {
    if (spec.length == 0) throw Error(ErrorCode::InvalidParameters, "length must be > 0");
    SynthSeries out;
    switch (spec.family) {
        case GeneratorFamily::GaussianIid:
            out.returns = gaussian_iid_returns(spec.length, param_or(spec, "mu", 0.0),
                                               param_or(spec, "sigma", 1.0), spec.seed);
            break;
        case GeneratorFamily::StudentTIid:
            out.returns = student_t_iid_returns(spec.length, param_or(spec, "dof", 3.0),
                                                param_or(spec, "scale", 1.0), spec.seed);
            break;
        case GeneratorFamily::ParetoTail:
            out.returns = pareto_tail_returns(spec.length, param_or(spec, "alpha", 2.0),
                                              param_or(spec, "x_min", 1.0), spec.seed);
            break;
        case GeneratorFamily::Garch11:
            out.returns = garch11_returns(spec.length, param_or(spec, "omega", 0.05),
                                          param_or(spec, "alpha", 0.1),
                                          param_or(spec, "beta", 0.85), spec.seed);
            break;
        case GeneratorFamily::RandomWalkPrices:
            out.is_prices = true;
            out.prices = random_walk_prices(spec.length, param_or(spec, "sigma", 1.0),
                                            param_or(spec, "drift", 0.0),
                                            param_or(spec, "plus_minus", 0.0) != 0.0, spec.seed);
            break;
        case GeneratorFamily::OmoriProcess: {
            std::vector<std::size_t> onsets;
            for (std::size_t k = 0;; ++k) {
                const auto it = spec.parameters.find("onset" + std::to_string(k));
                if (it == spec.parameters.end()) break;
                onsets.push_back(static_cast<std::size_t>(it->second));
            }
            if (onsets.empty()) onsets.push_back(0);
            out.returns = omori_process_returns(onsets, param_or(spec, "p", 0.8),
                                                param_or(spec, "amplitude", 5.0),
                                                param_or(spec, "delta", 1.0), spec.length,
                                                spec.seed);
            break;
        }
        case GeneratorFamily::PlantedLagPair:
            out.is_prices = true;
            out.prices = planted_lag_pair(
                spec.length, static_cast<std::size_t>(param_or(spec, "lag", 5.0)),
                param_or(spec, "sigma", 1.0), spec.seed);
            break;
    }
    return out;
}

}  // namespace sfkit
