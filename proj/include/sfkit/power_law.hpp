#pragma once

#include <cstddef>

namespace sfkit {

// Result of a log-log (or otherwise linearized) power-law regression,
// shared by the tail, Taylor, Gutenberg-Richter and persistence fits.
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double exponent_stderr = 0.0;
    double fit_lo = 0.0;  // threshold/abscissa units
    double fit_hi = 0.0;
    double residual_norm = 0.0;  // L2 norm of residuals in the fitted space
    std::size_t n_points = 0;
};

}  // namespace sfkit
