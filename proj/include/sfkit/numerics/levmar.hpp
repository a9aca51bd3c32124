#pragma once

// Levenberg-Marquardt nonlinear least squares with the classical damping
// schedule: lambda *= 10 on a rejected step, lambda /= 10 on an accepted one.

#include <functional>
#include <optional>
#include <vector>

namespace sfkit {

struct NlsProblem {
    // params -> residual vector (fixed length across calls).
    std::function<std::vector<double>(const std::vector<double>&)> residual;
    // Optional analytic Jacobian: params -> row-major m x p matrix. When
    // absent, a forward-difference Jacobian with step 1e-7*max(1,|param|)
    // is used.
    std::function<std::vector<double>(const std::vector<double>&)> jacobian;
    std::vector<double> initial_parameters;
};

// Per-parameter box constraint; either side may be open.
struct ParameterBound {
    std::optional<double> lo;
    std::optional<double> hi;
};

struct BoundedProblem {
    NlsProblem problem;  // parameters live in an unconstrained space
    // Maps the solver's internal parameters back to constrained values.
    std::function<std::vector<double>(const std::vector<double>&)> to_external;
};

// Smooth log/logit reparameterization (no clipping): one-sided bounds map
// through exp, two-sided through a logistic. Initial parameters must be
// strictly inside their bounds.
BoundedProblem with_bounds(const NlsProblem& problem,
                           const std::vector<ParameterBound>& bounds);

struct LmOptions {
    double tol = 1e-10;          // relative reduction of squared residual
    int max_iterations = 500;
    double initial_lambda = 1e-3;
    double max_lambda = 1e10;
};

struct LmResult {
    std::vector<double> parameters;
    double residual_norm = 0.0;  // sqrt of the sum of squared residuals
    int iterations = 0;
    bool converged = false;
    // Squared-residual objective after each accepted step (non-increasing).
    std::vector<double> accepted_objectives;
};

LmResult levenberg_marquardt(const NlsProblem& problem, const LmOptions& options = {});

}  // namespace sfkit
