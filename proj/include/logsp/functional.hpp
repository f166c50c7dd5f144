#pragma once

#include <numbers>

#include "logsp/grid.hpp"
#include "logsp/logkernel.hpp"
#include "logsp/potentials.hpp"

namespace logsp {

/// Problem data for
///   -Lap u + V u + (gamma/2pi) (log|.| * u^2) u = b |u|^{p-2} u.
struct ProblemSpec {
    GridSpec grid{8.0, 64};
    PotentialSpec potential{};
    double p_exp = 6.0;
    double gamma = 2.0 * std::numbers::pi;
    double b_coef = 1.0;
};

/// Throws InvalidParameter unless p > 4, gamma > 0, b > 0 and V is admissible.
void validate(const ProblemSpec& spec);

/// A validated ProblemSpec together with everything precomputed from it: the
/// potential samples, the star weight log(1+|x|), the log-kernel convolution
/// plan. Shared read-only by all functional evaluations.
class Problem {
public:
    explicit Problem(ProblemSpec spec);

    [[nodiscard]] const ProblemSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] const GridSpec& grid() const noexcept { return spec_.grid; }
    [[nodiscard]] const ScalarField& potential() const noexcept { return v_; }
    [[nodiscard]] const ScalarField& star_weight() const noexcept { return star_; }
    /// V + log(1+|x|): the zero-order part of the X metric.
    [[nodiscard]] const ScalarField& metric_diagonal() const noexcept { return metric_diag_; }
    [[nodiscard]] const ConvolutionPlan& plan() const noexcept { return plan_; }
    /// gamma / 2pi
    [[nodiscard]] double coupling() const noexcept { return spec_.gamma / (2.0 * std::numbers::pi); }

private:
    ProblemSpec spec_;
    ScalarField v_;
    ScalarField star_;
    ScalarField metric_diag_;
    ConvolutionPlan plan_;
};

/// The ray t -> I(t u) = t^2 a/2 + t^4 q/4 - t^p m/p.
struct FiberingCoefficients {
    double a = 0.0;  ///< |grad u|^2 + V u^2 integrated
    double q = 0.0;  ///< (gamma/2pi) V0(u)
    double m = 0.0;  ///< b |u|_p^p
    double p_exp = 6.0;

    [[nodiscard]] double value(double t) const noexcept;
    /// d/dt value(t) = t (a + t^2 q - t^{p-2} m)
    [[nodiscard]] double slope(double t) const noexcept;
    /// a + t^2 q - t^{p-2} m; its positive root is the Nehari scale.
    [[nodiscard]] double nehari_function(double t) const noexcept;
};

struct Diagnostics {
    double energy = 0.0;
    double residual_l2 = 0.0;      ///< |gradient_field|_2
    double cerami_residual = 0.0;  ///< (1 + |u|_X) |I'(u)|_{X'}
    double identity_gap = 0.0;
    double nehari_gap = 0.0;       ///< |I'(u)[u]|
};

double energy(const ScalarField& u, const Problem& problem);

/// I'(u)[v] = <grad u, grad v> + int V u v + (gamma/2pi) B0(u^2, u v) - b int |u|^{p-2} u v.
double directional_derivative(const ScalarField& u, const ScalarField& v, const Problem& problem);

/// -Lap_h u + V u + gamma phi_u u - b |u|^{p-2} u, so that
/// h^2 <gradient_field(u), v> == directional_derivative(u, v).
ScalarField gradient_field(const ScalarField& u, const Problem& problem);

/// Throws DegenerateInput for u = 0.
FiberingCoefficients fibering_coefficients(const ScalarField& u, const Problem& problem);

/// Unique t* > 0 with slope(t*) = 0. Throws DegenerateInput unless a > 0,
/// m > 0 and p > 4.
double nehari_project(const FiberingCoefficients& c);

struct MetricSolve {
    ScalarField solution;
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// M u = (-Lap_h + V + log(1+|x|)) u, the Riesz map of the X inner product.
ScalarField apply_metric(const ScalarField& u, const Problem& problem);

/// Solves M z = g by Jacobi-preconditioned conjugate gradients.
MetricSolve solve_metric(const ScalarField& g, const Problem& problem, double rel_tol = 1e-10,
                         const ScalarField* initial_guess = nullptr);

/// sqrt(h^2 <g, M^{-1} g>): the X-dual norm of the functional v -> h^2 <g, v>.
double dual_norm(const ScalarField& g, const Problem& problem);

/// (1 + |u|_X) |I'(u)|_{X'} with the dual norm taken in the discrete X metric.
double cerami_residual(const ScalarField& u, const Problem& problem);

/// |(I(u) - I'(u)[u]/4) - (a/4 + (1/4 - 1/p) m)| / (1 + |I(u) - I'(u)[u]/4|).
double identity_check(const ScalarField& u, const Problem& problem);

/// Every entry recomputed from scratch.
Diagnostics diagnose(const ScalarField& u, const Problem& problem);

} // namespace logsp
