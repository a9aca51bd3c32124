#pragma once

#include <optional>
#include <vector>

#include "sfkit/power_law.hpp"
#include "sfkit/series.hpp"

namespace sfkit {

enum class BandwidthRule {
    AsPrinted,  // h = 1.06 * sigma^2 * N^(-0.2)
    Silverman,  // h = 1.06 * sigma   * N^(-0.2)
};

struct DensityEstimate {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
    BandwidthRule rule = BandwidthRule::AsPrinted;
};

enum class TailBranch { Positive, Negative, Both };

struct CcdfCurve {
    std::vector<double> thresholds;  // sorted ascending
    std::vector<double> survival;    // Pr(X > threshold), non-increasing, > 0
    TailBranch branch = TailBranch::Positive;
    std::size_t branch_count = 0;    // observations on the branch
};

enum class DistributionFamily { Gaussian, StudentT };

struct DistributionFit {
    DistributionFamily family = DistributionFamily::Gaussian;
    double location = 0.0;
    double scale = 0.0;
    double dof = 0.0;  // Student-t only
    double log_likelihood = 0.0;
    int iterations = 0;
};

// Epanechnikov kernel density on grid_size points spanning
// [min - h, max + h]. The bandwidth follows `rule` unless an explicit
// override is given.
DensityEstimate kde_epanechnikov(const ReturnSeries& returns, std::size_t grid_size,
                                 BandwidthRule rule = BandwidthRule::AsPrinted,
                                 std::optional<double> bandwidth_override = std::nullopt);

// Empirical survival Pr(X > x) at each observed branch value; the negative
// branch operates on -r for r < 0. Trailing zero-survival points are dropped.
CcdfCurve ccdf(const ReturnSeries& returns, TailBranch branch);

// Least-squares line on (log threshold, log survival) over the largest
// tail_fraction of thresholds. The exponent is the slope (negative for
// decaying tails).
PowerLawFit fit_tail_exponent(const CcdfCurve& curve, double tail_fraction);

DistributionFit fit_gaussian(const ReturnSeries& returns);

// Maximum-likelihood Student-t (location/scale/dof) via Nelder-Mead, dof
// constrained to (2, 200] through a smooth reparameterization.
DistributionFit fit_student_t(const ReturnSeries& returns);

// Log-likelihoods at given parameters (used for fit comparison).
double gaussian_log_likelihood(const std::vector<double>& data, double location, double scale);
double student_t_log_likelihood(const std::vector<double>& data, double location, double scale,
                                double dof);

}  // namespace sfkit
