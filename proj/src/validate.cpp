#include "logsp/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "logsp/functional.hpp"
#include "logsp/io.hpp"
#include "logsp/random_fields.hpp"
#include "logsp/solver.hpp"

namespace logsp {

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

ScalarField squared(const ScalarField& u) {
    ScalarField s(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) s[k] = u[k] * u[k];
    return s;
}

CheckResult kernel_oracle(const std::vector<int>& sizes, Padding padding) {
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int n : sizes) {
        const GridSpec grid(4.0, n);
        const ConvolutionPlan plan(grid, KernelKind::log, padding);
        const KernelTable table(grid, KernelKind::log);
        const ScalarField u = smooth_field(grid, rng, 3, true);
        const ScalarField fast = phi_u(u, plan);
        const ScalarField direct = phi_u_direct(u, table);
        worst = std::max(worst, lp_norm(fast - direct, 2.0) / lp_norm(direct, 2.0));
        const ScalarField rho = squared(u);
        worst = std::max(worst, rel(bilinear(plan, rho, rho), bilinear(table, rho, rho)));
    }
    return {"kernel oracle (fast vs direct phi_u, V0)", worst <= 1e-10, "max rel err " + sci(worst)};
}

CheckResult kernel_split(int fields) {
    std::mt19937_64 rng(202);
    const GridSpec grid(2.0, 16);
    const KernelTable t0(grid, KernelKind::log);
    const KernelTable t1(grid, KernelKind::log1p);
    const KernelTable t2(grid, KernelKind::log1pinv);
    double worst = 0.0;
    for (int k = 0; k < fields; ++k) {
        const ScalarField f = noise_field(grid, rng);
        const double b0 = bilinear(t0, f, f);
        const double b12 = bilinear(t1, f, f) - bilinear(t2, f, f);
        worst = std::max(worst, std::abs(b0 - b12) / std::max(std::abs(b0), 1e-300));
    }
    return {"kernel split B0 = B1 - B2", worst <= 1e-10, "max rel err " + sci(worst)};
}

CheckResult homogeneity() {
    std::mt19937_64 rng(303);
    const GridSpec grid(4.0, 16);
    const ConvolutionPlan plan(grid);
    const ScalarField u = noise_field(grid, rng);
    double worst = 0.0;
    for (double t : {0.5, 2.0, 3.0}) {
        const ScalarField tu = t * u;
        const VEnergies e = v_energies(u, plan);
        const VEnergies et = v_energies(tu, plan);
        const double t4 = t * t * t * t;
        worst = std::max({worst, rel(et.v0, t4 * e.v0), rel(*et.v1, t4 * *e.v1), rel(*et.v2, t4 * *e.v2)});
        worst = std::max(worst, rel(lp_norm(tu, 3.0), t * lp_norm(u, 3.0)));
        worst = std::max(worst, rel(dirichlet_energy(tu), t * t * dirichlet_energy(u)));
    }
    return {"homogeneity (lp, Dirichlet, quartic V0/V1/V2)", worst <= 1e-12, "max rel err " + sci(worst)};
}

Problem small_problem(int n) {
    ProblemSpec spec;
    spec.grid = GridSpec(4.0, n);
    return Problem(spec);
}

CheckResult gradient_check(int n, int pairs) {
    std::mt19937_64 rng(404);
    const Problem problem = small_problem(n);
    double worst_fd = 0.0;
    double worst_adj = 0.0;
    const double eps = 1e-5;
    for (int k = 0; k < pairs; ++k) {
        const ScalarField u = smooth_field(problem.grid(), rng);
        const ScalarField v = smooth_field(problem.grid(), rng);
        const double dd = directional_derivative(u, v, problem);
        const double fd = (energy(u + eps * v, problem) - energy(u - eps * v, problem)) / (2.0 * eps);
        worst_fd = std::max(worst_fd, rel(fd, dd));
        const ScalarField g = gradient_field(u, problem);
        worst_adj = std::max(worst_adj, rel(inner(g, v), dd));
    }
    return {"gradient: finite differences (1e-6) and adjoint (1e-12)", worst_fd <= 1e-6 && worst_adj <= 1e-12,
            "fd " + sci(worst_fd) + ", adjoint " + sci(worst_adj)};
}

CheckResult identity(int fields) {
    std::mt19937_64 rng(505);
    const Problem problem = small_problem(16);
    double worst = 0.0;
    for (int k = 0; k < fields; ++k) {
        const ScalarField u = k % 2 == 0 ? noise_field(problem.grid(), rng) : smooth_field(problem.grid(), rng);
        worst = std::max(worst, identity_check(u, problem));
    }
    return {"identity I(u) - I'(u)[u]/4", worst <= 1e-12, "max gap " + sci(worst)};
}

CheckResult hls(int fields) {
    std::mt19937_64 rng(606);
    const GridSpec grid(2.0, 16);
    int violations = 0;
    double max_ratio = 0.0;
    for (int k = 0; k < fields; ++k) {
        const ScalarField u = noise_field(grid, rng, 0.0, 1.0);
        const HlsCheck c = hls_chain_check(u);
        if (!c.holds) ++violations;
        max_ratio = std::max(max_ratio, c.l83_ratio);
    }
    return {"HLS chain V2 <= Riesz", violations == 0,
            std::to_string(violations) + " violations, max riesz/|u|_{8/3}^4 " + sci(max_ratio)};
}

CheckResult nehari_roots() {
    struct Case {
        double a, q, m, expected;
    };
    const Case cases[] = {{1.0, 0.0, 1.0, 1.0},
                          {1.0, 1.0, 1.0, std::sqrt((1.0 + std::sqrt(5.0)) / 2.0)},
                          {1.0, -0.5, 1.0, std::sqrt((-0.5 + std::sqrt(4.25)) / 2.0)}};
    bool ok = true;
    std::ostringstream detail;
    detail << std::setprecision(9);
    for (const Case& c : cases) {
        const double t = nehari_project({c.a, c.q, c.m, 6.0});
        ok = ok && std::abs(t - c.expected) <= 1e-9;
        detail << t << ' ';
    }
    return {"analytic Nehari roots", ok, "t* = " + detail.str()};
}

CheckResult nehari_membership(int fields) {
    std::mt19937_64 rng(707);
    const Problem problem = small_problem(16);
    double worst = 0.0;
    for (int k = 0; k < fields; ++k) {
        ScalarField u = smooth_field(problem.grid(), rng);
        u *= nehari_project(fibering_coefficients(u, problem));
        worst = std::max(worst, std::abs(directional_derivative(u, u, problem)) / (1.0 + std::abs(energy(u, problem))));
    }
    return {"Nehari membership after projection", worst <= 1e-9, "max gap " + sci(worst)};
}

CheckResult small_solve() {
    ProblemSpec spec;
    spec.grid = GridSpec(8.0, 32);
    const Problem problem(spec);
    const GroundStateResult r = solve(problem, SolverConfig{});
    const bool nonnegative =
        std::all_of(r.u_final.values().begin(), r.u_final.values().end(), [](double v) { return v >= 0.0; });
    const bool ok = r.status == SolveStatus::converged && r.energy > 0.0 && nonnegative &&
                    r.ray.gap <= 1e-8 * (1.0 + std::abs(r.energy));
    return {"ground state (harmonic, n=32)", ok,
            std::string(to_string(r.status)) + ", I = " + io::format_real(r.energy) + ", cerami " +
                sci(r.diagnostics.cerami_residual) + ", " + std::to_string(r.iterations) + " iterations"};
}

} // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    const bool full = options.level == ValidationLevel::full;
    std::vector<CheckResult> out;
    out.push_back(kernel_oracle(full ? std::vector<int>{16, 32} : std::vector<int>{16}, options.padding));
    out.push_back(kernel_split(full ? 50 : 5));
    out.push_back(homogeneity());
    out.push_back(gradient_check(full ? 32 : 16, full ? 50 : 5));
    out.push_back(identity(full ? 100 : 10));
    out.push_back(hls(full ? 100 : 5));
    out.push_back(nehari_roots());
    out.push_back(nehari_membership(full ? 50 : 5));
    if (full) out.push_back(small_solve());
    return out;
}

bool print_validation(std::ostream& os, const std::vector<CheckResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        os << (r.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(56) << r.name << ' ' << r.detail << '\n';
        all = all && r.passed;
    }
    os << (all ? "all checks passed" : "some checks FAILED") << '\n';
    return all;
}

} // namespace logsp
