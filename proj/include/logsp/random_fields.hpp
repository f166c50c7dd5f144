#pragma once

#include <random>

#include "logsp/grid.hpp"

namespace logsp {

/// Independent uniform values in [lo, hi) on every cell.
ScalarField noise_field(const GridSpec& grid, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0);

/// A sum of `bumps` Gaussians with random centres in the inner half of the
/// box, widths in [0.5, 1.5] and signed (or, with nonnegative, positive)
/// amplitudes in [0.2, 1].
ScalarField smooth_field(const GridSpec& grid, std::mt19937_64& rng, int bumps = 3, bool nonnegative = false);

} // namespace logsp
