#pragma once

#include <cstdint>
#include <vector>

#include "sfkit/power_law.hpp"
#include "sfkit/series.hpp"

namespace sfkit {

struct PersistenceCurve {
    std::vector<std::size_t> durations;  // 1..max_duration
    std::vector<double> p_plus;          // Pr(price stays >= start for >= t bars)
    std::vector<double> p_minus;         // Pr(price stays <= start for >= t bars)
    std::vector<double> p_global;        // (p_plus + p_minus) / 2
    std::vector<std::size_t> n_at_risk;  // surviving runs (both branches) at t
    std::size_t n_samples = 0;           // sampled starts
    std::size_t censored_count = 0;      // runs surviving the full window, both branches
};

// Survival curves of the time a price stays at/above (P+) and at/below (P-)
// its start value, over n_starts uniformly sampled start indices. Ties
// persist on both branches; runs reaching max_duration are right-censored
// survivors.
PersistenceCurve persistence_curve(const PriceSeries& series, std::size_t n_starts,
                                   std::size_t max_duration, std::uint64_t seed);

// Same estimator over every valid start index (deterministic; used by the
// enumeration oracles).
PersistenceCurve persistence_curve_exhaustive(const PriceSeries& series,
                                              std::size_t max_duration);

// Least-squares line on (log t, log P_g) over [t_lo, t_hi];
// exponent = -theta_g.
PowerLawFit fit_persistence_exponent(const PersistenceCurve& curve, std::size_t t_lo,
                                     std::size_t t_hi);

}  // namespace sfkit
