#pragma once

#include <string>
#include <vector>

#include "sfkit/numerics/levmar.hpp"
#include "sfkit/series.hpp"

namespace sfkit {

struct EventCatalog {
    std::vector<std::size_t> onsets;  // strictly increasing bar indices
    std::vector<double> magnitudes;   // |log-return| at/after onset
    double threshold = 0.0;           // return units
    std::size_t min_gap = 1;          // bars between onsets
};

struct OmoriFit {
    double p = 0.0;
    std::vector<double> amplitudes;  // per-onset, > 0
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct GutenbergRichterFit {
    double a = 0.0;
    double b = 0.0;
    double fit_lo = 0.0;  // magnitude units
    double fit_hi = 0.0;
    double stderr_b = 0.0;
    std::size_t n_points = 0;
};

// Cumulative exceedance counter: N(t) = #{t' < t : |r(t')| > r_th} with
// r_th = threshold_sigmas * population std. Length size()+1, N(0) = 0.
std::vector<double> event_counter(const ReturnSeries& returns, double threshold_sigmas);

// Greedy declustering of threshold exceedances: a new onset opens only
// >= min_gap bars after the previous one; onset magnitude is the largest
// |r| in the following min_gap window.
EventCatalog detect_onsets(const ReturnSeries& returns, double threshold_sigmas,
                           std::size_t min_gap);

// Nonlinear least squares of
//   N~(t) = sum_k c_k (t - t0_k + delta)^(1-p) Theta(t - t0_k),  Theta(0)=0
// against the counter, shared p, per-onset amplitudes (log-reparameterized),
// Levenberg-Marquardt with analytic Jacobian.
OmoriFit fit_omori(const std::vector<double>& counter, const EventCatalog& catalog,
                   double delta = 1.0, const LmOptions& options = {});

// Line fit of log10 N(M) vs M where N(M) = #{|r| >= M} on evenly spaced
// magnitude thresholds with N >= min_count; a = intercept, b = -slope.
// An explicit magnitude window pins the fitted thresholds.
GutenbergRichterFit fit_gutenberg_richter(const ReturnSeries& returns, std::size_t n_thresholds,
                                          std::size_t min_count);
GutenbergRichterFit fit_gutenberg_richter(const ReturnSeries& returns, std::size_t n_thresholds,
                                          std::size_t min_count, double m_lo, double m_hi);

// The regression core on precomputed survival counts (testable in isolation).
GutenbergRichterFit fit_gr_from_counts(const std::vector<double>& thresholds,
                                       const std::vector<double>& counts, double min_count);

// Catalog persistence: CSV columns onset_index,magnitude.
void save_catalog_csv(const EventCatalog& catalog, const std::string& path);
EventCatalog load_catalog_csv(const std::string& path, double threshold, std::size_t min_gap);

}  // namespace sfkit
