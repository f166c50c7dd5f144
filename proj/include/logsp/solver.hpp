#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "logsp/functional.hpp"

namespace logsp {

/// amplitude * exp(-|x - center|^2 / (2 width^2))
struct GaussianInit {
    std::array<double, 2> center{0.0, 0.0};
    double width = 1.0;
    double amplitude = 1.0;
};

/// Sum of two Gaussians of equal width and amplitude.
struct TwoBumpInit {
    std::array<double, 2> first{-2.0, 0.0};
    std::array<double, 2> second{2.0, 0.0};
    double width = 1.0;
    double amplitude = 1.0;
};

struct TabulatedInit {
    std::shared_ptr<const ScalarField> field;
};

/// Cellwise uniform noise in [0.5, 1.5) under a broad Gaussian envelope,
/// drawn from the configured seed.
struct RandomInit {
    double width = 2.0;
};

using InitSpec = std::variant<GaussianInit, TwoBumpInit, TabulatedInit, RandomInit>;

enum class Positivity { project_each_iter, project_at_end };

struct SolverConfig {
    int max_iter = 20000;
    double tol_cerami = 1e-6;
    /// Relative energy decrease over a 50-iteration window below which the run
    /// counts as stalled (when the residual also stopped improving).
    double tol_energy_stall = 1e-14;
    double step0 = 1.0;
    double step_shrink = 0.5;
    double step_grow = 1.1;
    double armijo = 1e-4;
    std::uint64_t seed = 42;
    InitSpec init = GaussianInit{};
    Positivity positivity = Positivity::project_each_iter;
    int max_restarts = 3;
    /// Called with (k, u_k) for every recorded iterate; optional.
    std::function<void(int, const ScalarField&)> on_iterate;
};

/// Throws InvalidParameter on non-positive tolerances, max_iter < 1, ...
void validate(const SolverConfig& cfg);

enum class SolveStatus { converged, stalled, max_iter, failed };

const char* to_string(SolveStatus s) noexcept;

struct HistoryRow {
    int iteration = 0;
    double energy = 0.0;
    double cerami_residual = 0.0;
    double step = 0.0;  ///< step accepted to reach this iterate (0 for the start)
};

struct RayCheck {
    double gap = 0.0;        ///< max_t I(t u) - I(u)
    double maximizer = 1.0;  ///< argmax_t I(t u)
    double energy = 0.0;     ///< I(u)
};

struct GroundStateResult {
    ScalarField u_final;
    double energy = 0.0;
    Diagnostics diagnostics;
    int iterations = 0;
    std::vector<HistoryRow> history;
    RayCheck ray;
    SolveStatus status = SolveStatus::failed;
    int restarts = 0;
    std::string message;
};

/// Initial field for a configuration (before projection).
ScalarField initial_field(const SolverConfig& cfg, const GridSpec& grid, std::uint64_t seed);

/// Preconditioned descent on the Nehari manifold:
///   u <- t*(w) w,  w = P(u - tau M^{-1} I'(u)),
/// with P the positive part, M the X metric and tau from Armijo backtracking
/// on the ray maximum. Stops on the Cerami residual.
GroundStateResult solve(const Problem& problem, const SolverConfig& cfg);

/// Maximises t -> I(t u) over a geometric grid of 200 points in [1/16, 16]
/// refined by golden-section search. Throws DegenerateInput for u = 0.
RayCheck ray_max_check(const ScalarField& u, const Problem& problem);

/// Relative L2 distance of u from its average over the square's symmetry
/// group (quarter turns and the x1 mirror). 0 for u = 0.
double symmetry_report(const ScalarField& u);

} // namespace logsp
