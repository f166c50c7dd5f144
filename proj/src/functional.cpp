#include "logsp/functional.hpp"

#include <cmath>
#include <string>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

void validate(const ProblemSpec& spec) {
    if (!(spec.p_exp > 4.0) || !std::isfinite(spec.p_exp)) {
        throw InvalidParameter("exponent p must satisfy p > 4 (got p = " + std::to_string(spec.p_exp) + ")");
    }
    if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) throw InvalidParameter("gamma must be finite and > 0");
    if (!(spec.b_coef > 0.0) || !std::isfinite(spec.b_coef)) throw InvalidParameter("b must be finite and > 0");
    validate(spec.potential);
}

namespace {

const ProblemSpec& validated(const ProblemSpec& spec) {
    validate(spec);
    return spec;
}

} // namespace

Problem::Problem(ProblemSpec spec)
    : spec_(validated(spec)),
      v_(evaluate(spec_.potential, spec_.grid)),
      star_(log_weight(spec_.grid)),
      metric_diag_(v_ + star_),
      plan_(spec_.grid, KernelKind::log) {}

double FiberingCoefficients::value(double t) const noexcept {
    const double t2 = t * t;
    return 0.5 * t2 * a + 0.25 * t2 * t2 * q - std::pow(t, p_exp) * m / p_exp;
}

double FiberingCoefficients::slope(double t) const noexcept { return t * nehari_function(t); }

double FiberingCoefficients::nehari_function(double t) const noexcept {
    return a + t * t * q - std::pow(t, p_exp - 2.0) * m;
}

namespace {

void require_problem_grid(const ScalarField& u, const Problem& problem) {
    if (!(u.grid() == problem.grid())) throw GridMismatch("field and problem live on different grids");
}

// h^2 sum |u|^p
double power_sum(const ScalarField& u, double p) {
    const int n = u.grid().n();
    const auto vals = u.values();
    const double s = kernels::reduce_rows(n, [&](int i) {
        CompensatedSum acc;
        for (int j = 0; j < n; ++j) acc.add(std::pow(std::abs(vals[static_cast<std::size_t>(i) * n + j]), p));
        return acc.value();
    });
    return u.grid().cell_area() * s;
}

ScalarField squared(const ScalarField& u) {
    ScalarField s(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) s[k] = u[k] * u[k];
    return s;
}

// Fibering coefficients without the u != 0 requirement.
FiberingCoefficients raw_coefficients(const ScalarField& u, const Problem& problem) {
    require_problem_grid(u, problem);
    u.require_finite();
    const ProblemSpec& spec = problem.spec();
    FiberingCoefficients c;
    c.p_exp = spec.p_exp;
    c.a = dirichlet_energy(u) + weighted_mass(u, problem.potential());
    const ScalarField rho = squared(u);
    c.q = problem.coupling() * bilinear(problem.plan(), rho, rho);
    c.m = spec.b_coef * power_sum(u, spec.p_exp);
    return c;
}

} // namespace

double energy(const ScalarField& u, const Problem& problem) { return raw_coefficients(u, problem).value(1.0); }

double directional_derivative(const ScalarField& u, const ScalarField& v, const Problem& problem) {
    require_problem_grid(u, problem);
    require_same_grid(u, v);
    u.require_finite();
    v.require_finite();
    const ProblemSpec& spec = problem.spec();
    const double h2 = u.grid().cell_area();

    const double quadratic = dirichlet_pairing(u, v) + weighted_pairing(u, v, problem.potential());

    const ScalarField conv = problem.plan().convolve(squared(u));
    ScalarField uv(u.grid());
    ScalarField nonlinear(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) {
        uv[k] = u[k] * v[k];
        nonlinear[k] = std::pow(std::abs(u[k]), spec.p_exp - 2.0);
    }
    const double nonlocal = problem.coupling() * h2 * inner(uv, conv);
    const double power = spec.b_coef * inner(uv, nonlinear);
    return quadratic + nonlocal - power;
}

ScalarField gradient_field(const ScalarField& u, const Problem& problem) {
    require_problem_grid(u, problem);
    u.require_finite();
    const ProblemSpec& spec = problem.spec();
    const double h2 = u.grid().cell_area();

    ScalarField g(u.grid());
    kernels::apply_shifted_laplacian(u.grid().n(), u.grid().h(), problem.potential().values(), u.values(),
                                     g.values(), kernels::Exec::omp);
    const ScalarField conv = problem.plan().convolve(squared(u));
    // gamma phi_u = (gamma/2pi) h^2 (log * u^2)
    const double nonlocal_scale = problem.coupling() * h2;
    for (std::size_t k = 0; k < u.size(); ++k) {
        g[k] += nonlocal_scale * conv[k] * u[k] - spec.b_coef * std::pow(std::abs(u[k]), spec.p_exp - 2.0) * u[k];
    }
    return g;
}

FiberingCoefficients fibering_coefficients(const ScalarField& u, const Problem& problem) {
    if (u.is_zero()) throw DegenerateInput("fibering map of the zero field is identically zero");
    return raw_coefficients(u, problem);
}

double nehari_project(const FiberingCoefficients& c) {
    if (!(c.a > 0.0) || !(c.m > 0.0)) {
        throw DegenerateInput("Nehari projection needs a > 0 and m > 0 (a = " + std::to_string(c.a) +
                              ", m = " + std::to_string(c.m) + ")");
    }
    if (!(c.p_exp > 4.0)) throw DegenerateInput("Nehari projection needs p > 4");
    if (!std::isfinite(c.q)) throw DegenerateInput("Nehari projection needs a finite quartic coefficient");

    // h(0) = a > 0 and h(t) -> -inf; for p > 4 the sign change is unique.
    double lo = 0.0;
    double hi = std::pow(2.0 * (c.a + std::abs(c.q)) / c.m, 1.0 / (c.p_exp - 2.0)) + 1.0;
    for (int k = 0; k < 2000 && c.nehari_function(hi) > 0.0; ++k) {
        lo = hi;
        hi *= 2.0;
    }
    if (c.nehari_function(hi) > 0.0) throw DegenerateInput("failed to bracket the Nehari root");

    while (hi - lo > 1e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (c.nehari_function(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double t = 0.5 * (lo + hi);
    double ft = c.nehari_function(t);
    for (int k = 0; k < 4 && ft != 0.0; ++k) {
        const double dfdt = 2.0 * t * c.q - (c.p_exp - 2.0) * std::pow(t, c.p_exp - 3.0) * c.m;
        if (dfdt == 0.0) break;
        const double next = t - ft / dfdt;
        const double fnext = c.nehari_function(next);
        if (!(std::abs(fnext) < std::abs(ft))) break;
        t = next;
        ft = fnext;
    }
    return t;
}

ScalarField apply_metric(const ScalarField& u, const Problem& problem) {
    require_problem_grid(u, problem);
    ScalarField out(u.grid());
    kernels::apply_shifted_laplacian(u.grid().n(), u.grid().h(), problem.metric_diagonal().values(), u.values(),
                                     out.values(), kernels::Exec::omp);
    return out;
}

namespace {

double dot(const ScalarField& a, const ScalarField& b) { return inner(a, b) / a.grid().cell_area(); }

} // namespace

MetricSolve solve_metric(const ScalarField& g, const Problem& problem, double rel_tol,
                         const ScalarField* initial_guess) {
    require_problem_grid(g, problem);
    g.require_finite();
    const GridSpec& grid = g.grid();
    MetricSolve result{ScalarField(grid), 0, 0.0, false};

    const double g_norm = std::sqrt(dot(g, g));
    if (g_norm == 0.0) {
        result.converged = true;
        return result;
    }

    ScalarField inv_diag(grid);
    const double stencil = 4.0 / grid.cell_area();
    for (std::size_t k = 0; k < g.size(); ++k) inv_diag[k] = 1.0 / (stencil + problem.metric_diagonal()[k]);

    ScalarField& x = result.solution;
    ScalarField r = g;
    if (initial_guess != nullptr) {
        require_same_grid(g, *initial_guess);
        x = *initial_guess;
        r -= apply_metric(x, problem);
    }
    ScalarField z(grid);
    for (std::size_t k = 0; k < g.size(); ++k) z[k] = inv_diag[k] * r[k];
    ScalarField dir = z;
    double rz = dot(r, z);

    const int max_iter = 20 * grid.n() + 2000;
    double r_norm = std::sqrt(dot(r, r));
    int it = 0;
    while (r_norm > rel_tol * g_norm && it < max_iter) {
        const ScalarField m_dir = apply_metric(dir, problem);
        const double alpha = rz / dot(dir, m_dir);
        x.axpy(alpha, dir);
        r.axpy(-alpha, m_dir);
        r_norm = std::sqrt(dot(r, r));
        ++it;
        if (r_norm <= rel_tol * g_norm) break;
        for (std::size_t k = 0; k < g.size(); ++k) z[k] = inv_diag[k] * r[k];
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t k = 0; k < g.size(); ++k) dir[k] = z[k] + beta * dir[k];
    }
    result.iterations = it;
    result.relative_residual = r_norm / g_norm;
    result.converged = r_norm <= rel_tol * g_norm;
    return result;
}

double dual_norm(const ScalarField& g, const Problem& problem) {
    const MetricSolve z = solve_metric(g, problem);
    return std::sqrt(std::max(0.0, inner(g, z.solution)));
}

namespace {

double x_norm(const ScalarField& u, const Problem& problem) {
    return std::sqrt(dirichlet_energy(u) + weighted_mass(u, problem.metric_diagonal()));
}

} // namespace

double cerami_residual(const ScalarField& u, const Problem& problem) {
    const ScalarField g = gradient_field(u, problem);
    return (1.0 + x_norm(u, problem)) * dual_norm(g, problem);
}

double identity_check(const ScalarField& u, const Problem& problem) {
    const FiberingCoefficients c = raw_coefficients(u, problem);
    const double lhs = c.value(1.0) - 0.25 * directional_derivative(u, u, problem);
    const double rhs = 0.25 * c.a + (0.25 - 1.0 / c.p_exp) * c.m;
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

Diagnostics diagnose(const ScalarField& u, const Problem& problem) {
    Diagnostics d;
    d.energy = energy(u, problem);
    const ScalarField g = gradient_field(u, problem);
    d.residual_l2 = lp_norm(g, 2.0);
    d.cerami_residual = (1.0 + x_norm(u, problem)) * dual_norm(g, problem);
    d.identity_gap = identity_check(u, problem);
    d.nehari_gap = std::abs(directional_derivative(u, u, problem));
    return d;
}

} // namespace logsp
