#include "logsp/random_fields.hpp"

#include <cmath>

namespace logsp {

ScalarField noise_field(const GridSpec& grid, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    ScalarField u(grid);
    for (double& v : u.values()) v = dist(rng);
    return u;
}

ScalarField smooth_field(const GridSpec& grid, std::mt19937_64& rng, int bumps, bool nonnegative) {
    const double half = 0.5 * grid.half_width();
    std::uniform_real_distribution<double> centre(-half, half);
    std::uniform_real_distribution<double> width(0.5, 1.5);
    std::uniform_real_distribution<double> amp(0.2, 1.0);
    std::bernoulli_distribution sign(0.5);
    ScalarField u(grid);
    for (int b = 0; b < bumps; ++b) {
        const double cx = centre(rng);
        const double cy = centre(rng);
        const double w = width(rng);
        double a = amp(rng);
        if (!nonnegative && sign(rng)) a = -a;
        for (int i = 0; i < grid.n(); ++i) {
            for (int j = 0; j < grid.n(); ++j) {
                const double dx = grid.x(i) - cx;
                const double dy = grid.y(j) - cy;
                u(i, j) += a * std::exp(-(dx * dx + dy * dy) / (2.0 * w * w));
            }
        }
    }
    return u;
}

} // namespace logsp
