#include "sfkit/numerics/regression.hpp"

#include <cmath>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"

namespace sfkit {

RegressionResult linear_fit(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw Error(ErrorCode::LengthMismatch,
                    std::to_string(xs.size()) + " xs vs " + std::to_string(ys.size()) + " ys");
    const std::size_t n = xs.size();
    if (n < 2) throw Error(ErrorCode::SeriesTooShort, "linear fit needs at least 2 points");

    const double x_mean = kernels::sum(xs.data(), n) / static_cast<double>(n);
    const double y_mean = kernels::sum(ys.data(), n) / static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - x_mean;
        const double dy = ys[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw Error(ErrorCode::DegenerateAbscissae, "all xs equal");

    RegressionResult out;
    out.n = n;
    out.slope = sxy / sxx;
    out.intercept = y_mean - out.slope * x_mean;

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (out.intercept + out.slope * xs[i]);
        ssr += r * r;
    }
    out.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;

    if (n > 2) {
        const double sigma2 = ssr / static_cast<double>(n - 2);
        out.slope_stderr = std::sqrt(sigma2 / sxx);
        out.intercept_stderr =
            std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + x_mean * x_mean / sxx));
    }
    // n == 2 interpolates exactly; stderrs stay 0.
    return out;
}

}  // namespace sfkit
