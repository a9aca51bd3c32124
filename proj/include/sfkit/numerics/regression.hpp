#pragma once

#include <span>

namespace sfkit {

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
};

// Ordinary least squares with n-2 degrees of freedom in the stderrs.
RegressionResult linear_fit(std::span<const double> xs, std::span<const double> ys);

}  // namespace sfkit
