#include "sfkit/numerics/levmar.hpp"

#include <cmath>

#include "sfkit/errors.hpp"

namespace sfkit {

namespace {

// Cholesky solve of a small SPD system A x = b (A row-major p x p).
// Returns false when the factorization breaks down.
bool cholesky_solve(std::vector<double> a, std::vector<double> b, std::size_t p,
                    std::vector<double>& x) {
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = a[i * p + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * p + k] * a[j * p + k];
            if (i == j) {
                if (s <= 0.0 || !std::isfinite(s)) return false;
                a[i * p + i] = std::sqrt(s);
            } else {
                a[i * p + j] = s / a[j * p + j];
            }
        }
    }
    // Forward then backward substitution.
    for (std::size_t i = 0; i < p; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= a[i * p + k] * b[k];
        b[i] = s / a[i * p + i];
    }
    x.assign(p, 0.0);
    for (std::size_t ii = p; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < p; ++k) s -= a[k * p + ii] * x[k];
        x[ii] = s / a[ii * p + ii];
    }
    return true;
}

double squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

std::vector<double> forward_difference_jacobian(
    const NlsProblem& problem, const std::vector<double>& params,
    const std::vector<double>& base_residual) {
    const std::size_t m = base_residual.size();
    const std::size_t p = params.size();
    std::vector<double> jac(m * p);
    std::vector<double> bumped = params;
    for (std::size_t j = 0; j < p; ++j) {
        const double step = 1e-7 * std::max(1.0, std::fabs(params[j]));
        bumped[j] = params[j] + step;
        const std::vector<double> r = problem.residual(bumped);
        bumped[j] = params[j];
        for (std::size_t i = 0; i < m; ++i) jac[i * p + j] = (r[i] - base_residual[i]) / step;
    }
    return jac;
}

}  // namespace

LmResult levenberg_marquardt(const NlsProblem& problem, const LmOptions& options) {
    std::vector<double> params = problem.initial_parameters;
    const std::size_t p = params.size();

    std::vector<double> residual = problem.residual(params);
    double objective = squared_norm(residual);
    if (!std::isfinite(objective))
        throw Error(ErrorCode::NonFiniteResidual, "objective not finite at initial parameters");

    LmResult result;
    result.accepted_objectives.push_back(objective);

    double lambda = options.initial_lambda;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        const std::size_t m = residual.size();
        const std::vector<double> jac = problem.jacobian
                                            ? problem.jacobian(params)
                                            : forward_difference_jacobian(problem, params, residual);

        // Normal equations: (J^T J + lambda I) delta = -J^T r.
        std::vector<double> jtj(p * p, 0.0);
        std::vector<double> jtr(p, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t a = 0; a < p; ++a) {
                const double ja = jac[i * p + a];
                jtr[a] += ja * residual[i];
                for (std::size_t b = 0; b <= a; ++b) jtj[a * p + b] += ja * jac[i * p + b];
            }
        }
        for (std::size_t a = 0; a < p; ++a)
            for (std::size_t b = a + 1; b < p; ++b) jtj[a * p + b] = jtj[b * p + a];

        bool stepped = false;
        while (lambda <= options.max_lambda) {
            std::vector<double> damped = jtj;
            for (std::size_t a = 0; a < p; ++a) damped[a * p + a] = jtj[a * p + a] + lambda;
            std::vector<double> neg_jtr(p);
            for (std::size_t a = 0; a < p; ++a) neg_jtr[a] = -jtr[a];

            std::vector<double> delta;
            if (!cholesky_solve(damped, neg_jtr, p, delta)) {
                lambda *= 10.0;
                continue;
            }

            std::vector<double> trial = params;
            for (std::size_t a = 0; a < p; ++a) trial[a] += delta[a];
            const std::vector<double> trial_residual = problem.residual(trial);
            const double trial_objective = squared_norm(trial_residual);
            if (!std::isfinite(trial_objective)) {
                lambda *= 10.0;
                continue;
            }

            if (trial_objective <= objective) {
                const double reduction =
                    objective > 0.0 ? (objective - trial_objective) / objective : 0.0;
                params = std::move(trial);
                residual = trial_residual;
                objective = trial_objective;
                result.accepted_objectives.push_back(objective);
                lambda = std::max(lambda / 10.0, 1e-15);
                stepped = true;
                if (reduction < options.tol) {
                    result.converged = true;
                }
                break;
            }
            lambda *= 10.0;
        }

        if (!stepped) {
            if (lambda > options.max_lambda && objective > 0.0 && p > 0) {
                // Damping exhausted without an acceptable step.
                if (result.accepted_objectives.size() <= 1)
                    throw Error(ErrorCode::SingularNormalEquations,
                                "no acceptable step up to lambda=1e10");
            }
            result.converged = true;  // stationary within damping range
            break;
        }
        if (result.converged) break;
    }

    result.parameters = std::move(params);
    result.residual_norm = std::sqrt(objective);
    result.iterations = iter + 1;
    return result;
}

BoundedProblem with_bounds(const NlsProblem& problem,
                           const std::vector<ParameterBound>& bounds) {
    const std::size_t p = problem.initial_parameters.size();
    if (bounds.size() != p)
        throw Error(ErrorCode::LengthMismatch, "bounds vs parameters");

    auto external_of = [bounds](const std::vector<double>& internal) {
        std::vector<double> external(internal.size());
        for (std::size_t i = 0; i < internal.size(); ++i) {
            const auto& b = bounds[i];
            if (b.lo && b.hi)
                external[i] = *b.lo + (*b.hi - *b.lo) / (1.0 + std::exp(-internal[i]));
            else if (b.lo)
                external[i] = *b.lo + std::exp(internal[i]);
            else if (b.hi)
                external[i] = *b.hi - std::exp(internal[i]);
            else
                external[i] = internal[i];
        }
        return external;
    };

    std::vector<double> internal0(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto& b = bounds[i];
        const double x = problem.initial_parameters[i];
        if (b.lo && b.hi) {
            if (!(x > *b.lo) || !(x < *b.hi))
                throw Error(ErrorCode::InvalidParameters,
                            "initial parameter " + std::to_string(i) + " not inside bounds");
            internal0[i] = std::log((x - *b.lo) / (*b.hi - x));
        } else if (b.lo) {
            if (!(x > *b.lo))
                throw Error(ErrorCode::InvalidParameters,
                            "initial parameter " + std::to_string(i) + " not above lower bound");
            internal0[i] = std::log(x - *b.lo);
        } else if (b.hi) {
            if (!(x < *b.hi))
                throw Error(ErrorCode::InvalidParameters,
                            "initial parameter " + std::to_string(i) + " not below upper bound");
            internal0[i] = std::log(*b.hi - x);
        } else {
            internal0[i] = x;
        }
    }

    BoundedProblem out;
    out.to_external = external_of;
    out.problem.initial_parameters = std::move(internal0);
    const auto residual = problem.residual;
    out.problem.residual = [residual, external_of](const std::vector<double>& internal) {
        return residual(external_of(internal));
    };
    // The transformed problem falls back to finite differences; the chain
    // rule on a user Jacobian buys little for these problem sizes.
    return out;
}

}  // namespace sfkit
