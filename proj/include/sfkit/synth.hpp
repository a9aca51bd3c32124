#pragma once

// Synthetic series with known ground truth, backing the estimator test
// suites. Deterministic for a fixed (spec, seed).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sfkit/series.hpp"

namespace sfkit {

enum class GeneratorFamily {
    GaussianIid,      // sigma, mu: zero excess kurtosis, zero ACF
    StudentTIid,      // dof, scale: excess kurtosis 6/(dof-4) for dof > 4
    ParetoTail,       // alpha, x_min: CCDF exponent -alpha
    Garch11,          // omega, alpha, beta: r^2 ACF positive, r ACF zero
    RandomWalkPrices, // sigma, drift, plus_minus: persistence exponent 1/2
    OmoriProcess,     // p, amplitude, delta, onsets via parameters onset0..: planted counter
    PlantedLagPair,   // lag, sigma: volume/volatility cross-correlation peak at +lag
};

struct GeneratorSpec {
    GeneratorFamily family = GeneratorFamily::GaussianIid;
    std::map<std::string, double> parameters;
    std::size_t length = 0;
    std::uint64_t seed = 0;
};

GeneratorFamily generator_family_from_name(const std::string& name);
const char* generator_family_name(GeneratorFamily family);

// Families producing returns yield a ReturnSeries; price families fill
// `prices` (PlantedLagPair also fills volumes).
struct SynthSeries {
    bool is_prices = false;
    ReturnSeries returns;
    PriceSeries prices;
};

SynthSeries generate(const GeneratorSpec& spec);

// Typed generators (what `generate` dispatches to).
ReturnSeries gaussian_iid_returns(std::size_t length, double mu, double sigma,
                                  std::uint64_t seed);
ReturnSeries student_t_iid_returns(std::size_t length, double dof, double scale,
                                   std::uint64_t seed);
ReturnSeries pareto_tail_returns(std::size_t length, double alpha, double x_min,
                                 std::uint64_t seed);
ReturnSeries garch11_returns(std::size_t length, double omega, double alpha, double beta,
                             std::uint64_t seed);
PriceSeries random_walk_prices(std::size_t length, double sigma, double drift, bool plus_minus,
                               std::uint64_t seed);
PriceSeries planted_lag_pair(std::size_t length, std::size_t lag, double sigma,
                             std::uint64_t seed);

// Exact Eq.-12-shaped cumulative counter
//   N~(t) = sum_k amplitude (t - t0_k + delta)^(1-p), t > t0_k
// over `length` bars (the noiseless Omori oracle).
std::vector<double> omori_expected_counter(const std::vector<std::size_t>& onsets, double p,
                                           double amplitude, double delta, std::size_t length);

// Binomially thinned realization: a return series whose exceedances follow
// the increments of the expected counter (plus sub-threshold noise).
ReturnSeries omori_process_returns(const std::vector<std::size_t>& onsets, double p,
                                   double amplitude, double delta, std::size_t length,
                                   std::uint64_t seed);

// Convert a ReturnSeries into a PriceSeries (p0 = 100, unit cadence) so
// synthetic data can flow through the CSV/ingestion path.
PriceSeries prices_from_returns(const ReturnSeries& returns, double initial_price = 100.0,
                                std::int64_t cadence_seconds = 60);

}  // namespace sfkit
