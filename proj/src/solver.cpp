#include "logsp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "logsp/error.hpp"

namespace logsp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kStallWindow = 50;

double gaussian(double x, double y, const std::array<double, 2>& c, double width) {
    const double dx = x - c[0];
    const double dy = y - c[1];
    return std::exp(-(dx * dx + dy * dy) / (2.0 * width * width));
}

void positive_part(ScalarField& u) {
    for (double& v : u.values()) v = std::max(v, 0.0);
}

double x_norm(const ScalarField& u, const Problem& problem) {
    return std::sqrt(dirichlet_energy(u) + weighted_mass(u, problem.metric_diagonal()));
}

// One descent state: the iterate, its gradient and preconditioned gradient.
struct Evaluated {
    ScalarField g;
    ScalarField d;
    double dual_sq = 0.0;
    double cerami = 0.0;
};

Evaluated evaluate_at(const ScalarField& u, const Problem& problem) {
    Evaluated e{gradient_field(u, problem), ScalarField(u.grid()), 0.0, 0.0};
    e.d = solve_metric(e.g, problem).solution;
    e.dual_sq = std::max(0.0, inner(e.g, e.d));
    e.cerami = (1.0 + x_norm(u, problem)) * std::sqrt(e.dual_sq);
    return e;
}

} // namespace

void validate(const SolverConfig& cfg) {
    if (cfg.max_iter < 1) throw InvalidParameter("max_iter must be >= 1");
    if (!(cfg.tol_cerami > 0.0)) throw InvalidParameter("tol_cerami must be > 0");
    if (!(cfg.tol_energy_stall > 0.0)) throw InvalidParameter("tol_energy_stall must be > 0");
    if (!(cfg.step0 > 0.0)) throw InvalidParameter("step0 must be > 0");
    if (!(cfg.step_shrink > 0.0 && cfg.step_shrink < 1.0)) throw InvalidParameter("step_shrink must lie in (0, 1)");
    if (!(cfg.step_grow >= 1.0)) throw InvalidParameter("step_grow must be >= 1");
    if (!(cfg.armijo > 0.0 && cfg.armijo < 1.0)) throw InvalidParameter("armijo must lie in (0, 1)");
    if (cfg.max_restarts < 0) throw InvalidParameter("max_restarts must be >= 0");
    std::visit(overloaded{[](const GaussianInit& g) {
                              if (!(g.width > 0.0)) throw InvalidParameter("gaussian init width must be > 0");
                          },
                          [](const TwoBumpInit& g) {
                              if (!(g.width > 0.0)) throw InvalidParameter("two_bump init width must be > 0");
                          },
                          [](const TabulatedInit& t) {
                              if (!t.field) throw InvalidParameter("tabulated init has no field");
                          },
                          [](const RandomInit& r) {
                              if (!(r.width > 0.0)) throw InvalidParameter("random init width must be > 0");
                          }},
               cfg.init);
}

const char* to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::stalled: return "stalled";
        case SolveStatus::max_iter: return "max_iter";
        case SolveStatus::failed: return "failed";
    }
    return "?";
}

ScalarField initial_field(const SolverConfig& cfg, const GridSpec& grid, std::uint64_t seed) {
    return std::visit(
        overloaded{
            [&](const GaussianInit& g) {
                return ScalarField::from_function(
                    grid, [&](double x, double y) { return g.amplitude * gaussian(x, y, g.center, g.width); });
            },
            [&](const TwoBumpInit& g) {
                return ScalarField::from_function(grid, [&](double x, double y) {
                    return g.amplitude * (gaussian(x, y, g.first, g.width) + gaussian(x, y, g.second, g.width));
                });
            },
            [&](const TabulatedInit& t) {
                if (!(t.field->grid() == grid)) throw GridMismatch("tabulated init was sampled on a different grid");
                return *t.field;
            },
            [&](const RandomInit& r) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> noise(0.5, 1.5);
                ScalarField u(grid);
                for (int i = 0; i < grid.n(); ++i)
                    for (int j = 0; j < grid.n(); ++j)
                        u(i, j) = noise(rng) * gaussian(grid.x(i), grid.y(j), {0.0, 0.0}, r.width);
                return u;
            }},
        cfg.init);
}

GroundStateResult solve(const Problem& problem, const SolverConfig& cfg) {
    validate(cfg);
    const GridSpec& grid = problem.grid();
    const bool project_each = cfg.positivity == Positivity::project_each_iter;

    GroundStateResult result{ScalarField(grid), 0.0, {}, 0, {}, {}, SolveStatus::failed, 0, {}};

    ScalarField u(grid);
    bool started = false;
    for (int attempt = 0; attempt <= cfg.max_restarts && !started; ++attempt) {
        SolverConfig trial = cfg;
        // Reseeded restarts draw a random start.
        if (attempt > 0) trial.init = RandomInit{};
        u = initial_field(trial, grid, cfg.seed + static_cast<std::uint64_t>(attempt));
        u.require_finite();
        if (project_each) positive_part(u);
        result.restarts = attempt;
        if (u.is_zero()) continue;
        try {
            const FiberingCoefficients c = fibering_coefficients(u, problem);
            u *= nehari_project(c);
            started = true;
        } catch (const DegenerateInput&) {
            // collapsed start; reseed
        }
    }
    if (!started) {
        result.message = "initial iterate collapsed to zero after " + std::to_string(cfg.max_restarts) + " restarts";
        result.u_final = u;
        return result;
    }

    double e = energy(u, problem);
    double tau = cfg.step0;
    double last_step = 0.0;
    double best_cerami = std::numeric_limits<double>::infinity();
    std::vector<double> best_cerami_at;  // running minimum per iteration
    SolveStatus status = SolveStatus::max_iter;

    int k = 0;
    for (;; ++k) {
        if (!std::isfinite(e)) {
            status = SolveStatus::failed;
            result.message = "energy became non-finite";
            break;
        }
        const Evaluated ev = evaluate_at(u, problem);
        result.history.push_back({k, e, ev.cerami, last_step});
        if (cfg.on_iterate) cfg.on_iterate(k, u);
        best_cerami = std::min(best_cerami, ev.cerami);
        best_cerami_at.push_back(best_cerami);

        if (ev.cerami <= cfg.tol_cerami) {
            status = SolveStatus::converged;
            break;
        }
        if (k >= cfg.max_iter) {
            status = SolveStatus::max_iter;
            break;
        }
        if (k >= kStallWindow) {
            const auto& old = result.history[static_cast<std::size_t>(k - kStallWindow)];
            const bool flat_energy = old.energy - e <= cfg.tol_energy_stall * (1.0 + std::abs(e));
            const bool flat_residual = best_cerami >= best_cerami_at[static_cast<std::size_t>(k - kStallWindow)];
            if (flat_energy && flat_residual) {
                status = SolveStatus::stalled;
                result.message = "no progress over " + std::to_string(kStallWindow) + " iterations";
                break;
            }
        }

        // Backtracking on J(w) = max_t I(t w); on the Nehari manifold
        // J'(u) = I'(u), so the predicted decrease is tau <g, M^{-1} g>.
        bool accepted = false;
        while (tau > 1e-14 * cfg.step0) {
            ScalarField w = u;
            w.axpy(-tau, ev.d);
            if (project_each) positive_part(w);
            if (w.is_zero()) {
                tau *= cfg.step_shrink;
                continue;
            }
            const FiberingCoefficients c = fibering_coefficients(w, problem);
            if (!(c.m > 0.0) || !(c.a > 0.0)) {
                tau *= cfg.step_shrink;
                continue;
            }
            const double t = nehari_project(c);
            const double e_new = c.value(t);
            const double slack = 64.0 * std::numeric_limits<double>::epsilon() *
                                 (1.0 + std::abs(c.a) * t * t + std::abs(c.q) * std::pow(t, 4) + c.m * std::pow(t, c.p_exp));
            if (std::isfinite(e_new) && e_new <= e - cfg.armijo * tau * ev.dual_sq + slack) {
                w *= t;
                u = std::move(w);
                e = e_new;
                last_step = tau;
                tau *= cfg.step_grow;
                accepted = true;
                break;
            }
            tau *= cfg.step_shrink;
        }
        if (!accepted) {
            status = SolveStatus::stalled;
            result.message = "line search failed to find a decreasing step";
            break;
        }
    }

    if (!project_each) {
        const bool has_negative = std::any_of(u.values().begin(), u.values().end(), [](double v) { return v < 0.0; });
        if (has_negative) {
            // I is even, so |u| sits on the same ray level; reproject to absorb rounding.
            for (double& v : u.values()) v = std::abs(v);
            u *= nehari_project(fibering_coefficients(u, problem));
        }
    }

    result.u_final = u;
    result.iterations = k;
    result.status = status;
    result.diagnostics = diagnose(u, problem);
    result.energy = result.diagnostics.energy;
    result.ray = ray_max_check(u, problem);
    if (status == SolveStatus::converged && result.message.empty()) result.message = "cerami residual below tolerance";
    if (status == SolveStatus::max_iter && result.message.empty()) result.message = "iteration limit reached";
    return result;
}

RayCheck ray_max_check(const ScalarField& u, const Problem& problem) {
    if (u.is_zero()) throw DegenerateInput("ray check of the zero field");
    auto ray = [&](double t) {
        ScalarField tu = u;
        tu *= t;
        return energy(tu, problem);
    };

    constexpr int kPoints = 200;
    const double log_lo = std::log(1.0 / 16.0);
    const double log_hi = std::log(16.0);
    std::vector<double> ts(kPoints);
    std::vector<double> vals(kPoints);
    for (int k = 0; k < kPoints; ++k) {
        ts[k] = std::exp(log_lo + (log_hi - log_lo) * k / (kPoints - 1));
        vals[k] = ray(ts[k]);
    }
    const auto best = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    double a = ts[std::max(best - 1, 0)];
    double b = ts[std::min(best + 1, kPoints - 1)];

    // Golden-section refinement of the unimodal ray around the grid maximum.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = ray(c);
    double fd = ray(d);
    for (int it = 0; it < 200 && (b - a) > 1e-14 * b; ++it) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ray(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ray(d);
        }
    }
    double t_max = fc >= fd ? c : d;
    double f_max = std::max(fc, fd);
    if (vals[best] > f_max) {
        t_max = ts[best];
        f_max = vals[best];
    }

    RayCheck check;
    check.energy = energy(u, problem);
    check.maximizer = t_max;
    check.gap = f_max - check.energy;
    return check;
}

double symmetry_report(const ScalarField& u) {
    const int n = u.grid().n();
    const int last = n - 1;
    ScalarField avg(u.grid());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            // The eight images of cell (i, j) under the dihedral group of the square.
            const double s = u(i, j) + u(j, last - i) + u(last - i, last - j) + u(last - j, i) + u(last - i, j) +
                             u(i, last - j) + u(j, i) + u(last - j, last - i);
            avg(i, j) = s / 8.0;
        }
    }
    const double norm = lp_norm(u, 2.0);
    if (norm == 0.0) return 0.0;
    return lp_norm(u - avg, 2.0) / norm;
}

} // namespace logsp
