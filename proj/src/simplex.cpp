#include "sfkit/numerics/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace sfkit {

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          const std::vector<double>& start, const SimplexOptions& options) {
    const std::size_t dim = start.size();
    const std::size_t n_vertices = dim + 1;

    std::vector<std::vector<double>> vertices(n_vertices, start);
    for (std::size_t i = 0; i < dim; ++i) {
        vertices[i + 1][i] += start[i] != 0.0 ? options.initial_step * std::fabs(start[i])
                                              : options.initial_step;
    }
    std::vector<double> values(n_vertices);
    for (std::size_t i = 0; i < n_vertices; ++i) values[i] = objective(vertices[i]);

    std::vector<std::size_t> order(n_vertices);
    SimplexResult result;

    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        for (std::size_t i = 0; i < n_vertices; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[n_vertices - 1];
        const std::size_t second_worst = order[n_vertices - 2];

        if (std::fabs(values[worst] - values[best]) <=
            options.tolerance * (std::fabs(values[best]) + options.tolerance)) {
            result.converged = true;
            break;
        }

        // Centroid of all but the worst vertex.
        std::vector<double> centroid(dim, 0.0);
        for (std::size_t i = 0; i < n_vertices; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < dim; ++d) centroid[d] += vertices[i][d];
        }
        for (double& c : centroid) c /= static_cast<double>(dim);

        auto blend = [&](double coeff) {
            std::vector<double> point(dim);
            for (std::size_t d = 0; d < dim; ++d)
                point[d] = centroid[d] + coeff * (vertices[worst][d] - centroid[d]);
            return point;
        };

        const std::vector<double> reflected = blend(-1.0);
        const double f_reflected = objective(reflected);

        if (f_reflected < values[order[0]]) {
            const std::vector<double> expanded = blend(-2.0);
            const double f_expanded = objective(expanded);
            if (f_expanded < f_reflected) {
                vertices[worst] = expanded;
                values[worst] = f_expanded;
            } else {
                vertices[worst] = reflected;
                values[worst] = f_reflected;
            }
        } else if (f_reflected < values[second_worst]) {
            vertices[worst] = reflected;
            values[worst] = f_reflected;
        } else {
            const std::vector<double> contracted = blend(0.5);
            const double f_contracted = objective(contracted);
            if (f_contracted < values[worst]) {
                vertices[worst] = contracted;
                values[worst] = f_contracted;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i < n_vertices; ++i) {
                    if (i == best) continue;
                    for (std::size_t d = 0; d < dim; ++d)
                        vertices[i][d] = vertices[best][d] + 0.5 * (vertices[i][d] - vertices[best][d]);
                    values[i] = objective(vertices[i]);
                }
            }
        }
    }

    const std::size_t best =
        static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    result.parameters = vertices[best];
    result.objective = values[best];
    result.iterations = iter;
    return result;
}

}  // namespace sfkit
