#pragma once

// Nelder-Mead derivative-free minimizer (standard reflection / expansion /
// contraction / shrink coefficients).

#include <functional>
#include <vector>

namespace sfkit {

struct SimplexOptions {
    double tolerance = 1e-10;   // spread of objective values across vertices
    int max_iterations = 2000;
    double initial_step = 0.5;  // per-coordinate simplex offset
};

struct SimplexResult {
    std::vector<double> parameters;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start,
                          const SimplexOptions& options = {});

}  // namespace sfkit
