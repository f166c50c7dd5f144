// One line per acceptance criterion; nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "logsp/logkernel.hpp"
#include "logsp/random_fields.hpp"
#include "logsp/solver.hpp"
#include "oracles.hpp"

using namespace logsp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

ProblemSpec spec_on(const GridSpec& g, PotentialSpec v = Harmonic{}) {
    ProblemSpec s;
    s.grid = g;
    s.potential = std::move(v);
    return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome kernel_oracle() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int n : {16, 32}) {
        const GridSpec g(4.0, n);
        const ConvolutionPlan plan(g);
        for (int trial = 0; trial < 3; ++trial) {
            const ScalarField u = trial == 0 ? smooth_field(g, rng, 3, true) : noise_field(g, rng);
            const ScalarField rho = oracle::squared(u);
            // phi_u against the coordinate-level long double sum
            const ScalarField phi = phi_u(u, plan);
            double dev = 0.0;
            double scale = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    ScalarField delta(g);
                    delta(i, j) = 1.0 / g.cell_area();
                    const double ref = static_cast<double>(oracle::log_bilinear(delta, rho)) / (2.0 * std::numbers::pi);
                    dev = std::max(dev, std::abs(phi(i, j) - ref));
                    scale = std::max(scale, std::abs(ref));
                }
            worst = std::max(worst, dev / scale);
            const double v0 = v_energies(u, plan, 0).v0;
            worst = std::max(worst, rel(v0, static_cast<double>(oracle::log_bilinear(rho, rho))));
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {worst <= 1e-10 && secs < 5.0, "max rel err " + fmt("%.2e", worst) + ", " + fmt("%.2f", secs) + " s"};
}

Outcome kernel_split() {
    std::mt19937_64 rng(102);
    const GridSpec g(3.0, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ScalarField f = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        const double b0 = bilinear(KernelKind::log, f, f, BilinearMode::direct);
        const double b1 = bilinear(KernelKind::log1p, f, f, BilinearMode::direct);
        const double b2 = bilinear(KernelKind::log1pinv, f, f, BilinearMode::direct);
        worst = std::max(worst, std::abs(b0 - (b1 - b2)) / std::max({std::abs(b0), b1, b2}));
    }
    return {worst <= 1e-10, "50 fields, max rel err " + fmt("%.2e", worst)};
}

Outcome gradient() {
    std::mt19937_64 rng(103);
    const GridSpec g(4.0, 32);
    const Problem pr(spec_on(g, ShiftedModulated{}));
    const double eps = 1e-5;
    double fd_worst = 0.0;
    double adj_worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ScalarField u = smooth_field(g, rng);
        const ScalarField v = smooth_field(g, rng);
        const double fd = (energy(u + eps * v, pr) - energy(u - eps * v, pr)) / (2.0 * eps);
        const double dd = directional_derivative(u, v, pr);
        fd_worst = std::max(fd_worst, std::abs(fd - dd) / std::abs(dd));
        const ScalarField grad = gradient_field(u, pr);
        const ScalarField w = noise_field(g, rng);
        const double scale = std::sqrt(inner(grad, grad) * inner(w, w));
        adj_worst = std::max(adj_worst, std::abs(inner(grad, w) - directional_derivative(u, w, pr)) / scale);
    }
    return {fd_worst <= 1e-6 && adj_worst <= 1e-12,
            "fd " + fmt("%.2e", fd_worst) + ", adjoint " + fmt("%.2e", adj_worst)};
}

Outcome identity() {
    std::mt19937_64 rng(104);
    const GridSpec g(5.0, 32);
    const Problem pr(spec_on(g, Anisotropic{}));
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField u = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        worst = std::max(worst, identity_check(u, pr));
    }
    return {worst <= 1e-12, "100 fields, max gap " + fmt("%.2e", worst)};
}

Outcome quartic() {
    std::mt19937_64 rng(105);
    const GridSpec g(4.0, 32);
    const ConvolutionPlan plan(g);
    double worst = 0.0;
    bool nonneg = true;
    for (int trial = 0; trial < 5; ++trial) {
        const ScalarField u = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        const VEnergies e = v_energies(u, plan);
        nonneg = nonneg && *e.v1 >= 0.0 && *e.v2 >= 0.0;
        for (double t : {0.5, 2.0, 3.0}) {
            const VEnergies et = v_energies(t * u, plan);
            const double t4 = std::pow(t, 4);
            worst = std::max({worst, rel(et.v0, t4 * e.v0), rel(*et.v1, t4 * *e.v1), rel(*et.v2, t4 * *e.v2)});
            nonneg = nonneg && *et.v1 >= 0.0 && *et.v2 >= 0.0;
        }
    }
    auto bump = [&](double cx, double w) {
        return ScalarField::from_function(g, [=](double x, double y) {
            return std::exp(-((x - cx) * (x - cx) + y * y) / (2.0 * w * w));
        });
    };
    const double spread = v_energies(bump(-2.5, 0.3) + bump(2.5, 0.3), plan).v0;
    const double tight = v_energies(bump(0.0, 0.1), plan).v0;
    return {worst <= 1e-12 && nonneg && spread > 0.0 && tight < 0.0,
            "scaling " + fmt("%.2e", worst) + ", V0 spread " + fmt("%.3e", spread) + ", V0 tight " + fmt("%.3e", tight)};
}

Outcome hls() {
    std::mt19937_64 rng(106);
    const GridSpec g(2.0, 16);
    int violations = 0;
    double ratio = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField u = trial % 2 ? noise_field(g, rng, 0.0, 1.0) : smooth_field(g, rng, 3, true);
        const HlsCheck c = hls_chain_check(u);
        if (!(c.v2 <= c.riesz)) ++violations;
        ratio = std::max(ratio, c.l83_ratio);
    }
    return {violations == 0, std::to_string(violations) + " violations, max riesz/|u|_{8/3}^4 " + fmt("%.3f", ratio)};
}

Outcome nehari() {
    const double r1 = nehari_project({1.0, 0.0, 1.0, 6.0});
    const double r2 = nehari_project({1.0, 1.0, 1.0, 6.0});
    const double r3 = nehari_project({1.0, -0.5, 1.0, 6.0});
    const double e1 = std::abs(r1 - 1.0);
    const double e2 = std::abs(r2 - std::sqrt((1.0 + std::sqrt(5.0)) / 2.0));
    const double e3 = std::abs(r3 - std::sqrt((-0.5 + std::sqrt(4.25)) / 2.0));
    std::mt19937_64 rng(107);
    const GridSpec g(6.0, 32);
    const Problem pr(spec_on(g, ShiftedModulated{}));
    double gap = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        ScalarField u = smooth_field(g, rng);
        u *= nehari_project(fibering_coefficients(u, pr));
        gap = std::max(gap, std::abs(directional_derivative(u, u, pr)) / (1.0 + std::abs(energy(u, pr))));
    }
    return {std::max({e1, e2, e3}) <= 1e-9 && gap <= 1e-9,
            "roots " + fmt("%.10f", r1) + " " + fmt("%.10f", r2) + " " + fmt("%.10f", r3) + ", gap " + fmt("%.2e", gap)};
}

struct RunCheck {
    Outcome outcome;
    double energy = 0.0;
};

RunCheck ground_state(const PotentialSpec& v, bool report_symmetry) {
    const GridSpec g(8.0, 64);
    const Problem pr(spec_on(g, v));
    const auto start = std::chrono::steady_clock::now();
    const GroundStateResult r = solve(pr, SolverConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const double umax = r.u_final.max_abs();
    bool nonneg = true;
    bool bulk = true;
    for (int i = 0; i < g.n(); ++i)
        for (int j = 0; j < g.n(); ++j) {
            const double u = r.u_final(i, j);
            nonneg = nonneg && u >= 0.0;
            if (std::hypot(g.x(i), g.y(j)) < 0.5 * g.half_width()) bulk = bulk && u > 1e-12 * umax;
        }
    const bool ok = r.status == SolveStatus::converged && r.diagnostics.cerami_residual <= 1e-6 &&
                    r.iterations <= 20000 && secs < 300.0 && r.energy > 0.0 && nonneg && bulk &&
                    r.ray.gap <= 1e-8 * (1.0 + std::abs(r.energy)) && std::abs(r.ray.maximizer - 1.0) <= 1e-3 &&
                    r.diagnostics.identity_gap <= 1e-12 && r.diagnostics.nehari_gap <= 1e-9 * (1.0 + r.energy);
    std::ostringstream d;
    d << "I = " << fmt("%.10f", r.energy) << ", cerami " << fmt("%.2e", r.diagnostics.cerami_residual) << ", "
      << r.iterations << " it, ray gap " << fmt("%.1e", r.ray.gap) << " at t = " << fmt("%.6f", r.ray.maximizer)
      << ", min u " << fmt("%.1e", *std::min_element(r.u_final.values().begin(), r.u_final.values().end()));
    if (report_symmetry) d << ", symmetry deviation " << fmt("%.3f", symmetry_report(r.u_final));
    d << ", " << fmt("%.2f", secs) << " s";
    return {{ok, d.str()}, r.energy};
}

Outcome stability(double e64) {
    auto run = [](double L, int n) {
        const GroundStateResult r = solve(Problem(spec_on(GridSpec(L, n))), SolverConfig{});
        return r.status == SolveStatus::converged ? r.energy : std::nan("");
    };
    const double e128 = run(8.0, 128);
    const double e_l12 = run(12.0, 96);  // same h as L = 8, n = 64
    const double dn = rel(e128, e64);
    const double dl = rel(e_l12, e64);
    return {dn <= 0.05 && dl <= 0.01,
            "n 64->128 " + fmt("%.2f%%", 100.0 * dn) + ", L 8->12 at fixed h " + fmt("%.2e", dl)};
}

Outcome mountain_pass() {
    std::mt19937_64 rng(111);
    const GridSpec g(6.0, 32);
    const Problem pr(spec_on(g, ShiftedModulated{}));
    double lowest = std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 100; ++trial) {
        ScalarField u = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        u *= 0.05 / std::sqrt(dirichlet_energy(u) + std::pow(lp_norm(u, 2.0), 2));
        lowest = std::min(lowest, energy(u, pr));
    }
    double highest = -std::numeric_limits<double>::infinity();
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField u = smooth_field(g, rng);
        const double ts = nehari_project(fibering_coefficients(u, pr));
        highest = std::max(highest, energy(64.0 * ts * u, pr));
    }
    return {lowest > 0.0 && highest < 0.0,
            "min I on sphere " + fmt("%.3e", lowest) + ", max I(64 t* u) " + fmt("%.3e", highest)};
}

}  // namespace

int main() {
    int failed = 0;
    double e64 = std::nan("");
    auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("%s  %2d  %-34s %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
        std::fflush(stdout);
    };

    report(1, "kernel oracle equivalence", kernel_oracle);
    report(2, "kernel split identity", kernel_split);
    report(3, "gradient consistency", gradient);
    report(4, "algebraic identity", identity);
    report(5, "quartic scaling and signs", quartic);
    report(6, "HLS chain", hls);
    report(7, "fibering and Nehari roots", nehari);
    report(8, "ground state, harmonic V", [&] {
        const RunCheck c = ground_state(Harmonic{}, true);
        e64 = c.energy;
        return c.outcome;
    });
    report(9, "ground state, shifted_modulated V", [] { return ground_state(ShiftedModulated{}, true).outcome; });
    report(10, "discretization stability", [&] { return stability(e64); });
    report(11, "mountain-pass geometry", mountain_pass);

    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
