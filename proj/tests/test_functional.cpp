#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "logsp/error.hpp"
#include "logsp/functional.hpp"
#include "logsp/random_fields.hpp"
#include "oracles.hpp"

using namespace logsp;

namespace {

ProblemSpec spec_on(const GridSpec& g, PotentialSpec v = Harmonic{}, double p = 6.0) {
    ProblemSpec s;
    s.grid = g;
    s.potential = std::move(v);
    s.p_exp = p;
    return s;
}

ScalarField gaussian(const GridSpec& g, double cx, double cy, double w, double amp = 1.0) {
    return ScalarField::from_function(g, [=](double x, double y) {
        const double r2 = (x - cx) * (x - cx) + (y - cy) * (y - cy);
        return amp * std::exp(-r2 / (2.0 * w * w));
    });
}

}  // namespace

TEST_CASE("problem validation") {
    ProblemSpec s = spec_on(GridSpec(4.0, 16));
    for (double p : {4.0, 3.0, 2.0, -1.0}) {
        s.p_exp = p;
        CHECK_THROWS_AS(validate(s), InvalidParameter);
        CHECK_THROWS_AS(Problem{s}, InvalidParameter);
    }
    s.p_exp = 3.0;
    try {
        validate(s);
        FAIL("no throw");
    } catch (const InvalidParameter& e) {
        CHECK(std::string(e.what()).find("p > 4") != std::string::npos);
    }
    s.p_exp = 4.0000001;
    CHECK_NOTHROW(validate(s));
    s.gamma = 0.0;
    CHECK_THROWS_AS(validate(s), InvalidParameter);
    s.gamma = 1.0;
    s.b_coef = -1.0;
    CHECK_THROWS_AS(validate(s), InvalidParameter);
    s.b_coef = 1.0;
    s.potential = Harmonic{0.0, 1.0};
    CHECK_THROWS_AS(validate(s), InvalidParameter);
}

TEST_CASE("energy") {
    SUBCASE("zero field") {
        const Problem pr(spec_on(GridSpec(4.0, 16)));
        CHECK(energy(ScalarField(pr.grid()), pr) == 0.0);
        CHECK(directional_derivative(ScalarField(pr.grid()), ScalarField(pr.grid(), 1.0), pr) == 0.0);
        CHECK(gradient_field(ScalarField(pr.grid()), pr).max_abs() == 0.0);
    }
    SUBCASE("term by term against extended precision") {
        const GridSpec g(6.0, 32);
        const Problem pr(spec_on(g));
        const ScalarField u = gaussian(g, 0.3, -0.2, 0.8, 0.9);
        const ScalarField v = evaluate(Harmonic{}, g);
        const long double quad = 0.5L * (oracle::dirichlet(u) + oracle::weighted_sum(u, v));
        const ScalarField rho = oracle::squared(u);
        const long double nonlocal = 0.25L * oracle::log_bilinear(rho, rho);
        const long double local = oracle::power_sum(u, 6.0L) / 6.0L;
        const long double ref = quad + nonlocal - local;
        CHECK(std::fabs(energy(u, pr) - ref) <= 1e-11L * std::fabs(ref));
    }
    SUBCASE("fibering polynomial reproduces the ray") {
        std::mt19937_64 rng(41);
        const GridSpec g(4.0, 32);
        ProblemSpec s = spec_on(g, ShiftedModulated{}, 5.0);
        s.gamma = 3.0;
        s.b_coef = 0.7;
        const Problem pr(s);
        for (int trial = 0; trial < 5; ++trial) {
            const ScalarField u = smooth_field(g, rng);
            const FiberingCoefficients c = fibering_coefficients(u, pr);
            CHECK(c.a > 0.0);
            CHECK(c.m > 0.0);
            for (double t : {0.5, 1.0, 1.7, 2.0}) {
                const double e = energy(t * u, pr);
                CHECK(std::abs(c.value(t) - e) <= 1e-11 * std::abs(e));
            }
        }
    }
    SUBCASE("even functional") {
        std::mt19937_64 rng(42);
        const Problem pr(spec_on(GridSpec(4.0, 32), ShiftedModulated{}));
        for (int trial = 0; trial < 5; ++trial) {
            const ScalarField u = noise_field(pr.grid(), rng);
            const ScalarField minus = -1.0 * u;
            CHECK(energy(minus, pr) == energy(u, pr));
            const ScalarField g1 = gradient_field(u, pr);
            const ScalarField g2 = gradient_field(minus, pr);
            for (std::size_t k = 0; k < g1.size(); ++k) REQUIRE(g2[k] == -g1[k]);
        }
    }
    SUBCASE("grid mismatch") {
        const Problem pr(spec_on(GridSpec(4.0, 16)));
        CHECK_THROWS_AS(energy(ScalarField(GridSpec(4.0, 32)), pr), GridMismatch);
    }
}

TEST_CASE("derivative against finite differences") {
    std::mt19937_64 rng(43);
    const GridSpec g(4.0, 32);
    const Problem pr(spec_on(g, Anisotropic{}));
    const double eps = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const ScalarField u = smooth_field(g, rng);
        const ScalarField v = smooth_field(g, rng);
        const double fd = (energy(u + eps * v, pr) - energy(u - eps * v, pr)) / (2.0 * eps);
        const double dd = directional_derivative(u, v, pr);
        CHECK(std::abs(fd - dd) <= 1e-6 * std::max(std::abs(dd), 1e-3));
    }
}

TEST_CASE("gradient field is the exact Riesz representative in l2") {
    std::mt19937_64 rng(44);
    const GridSpec g(5.0, 32);
    const Problem pr(spec_on(g, ShiftedModulated{}, 7.0));
    const ScalarField u = smooth_field(g, rng);
    const ScalarField grad = gradient_field(u, pr);
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField v = noise_field(g, rng);
        const double lhs = inner(grad, v);
        const double rhs = directional_derivative(u, v, pr);
        const double scale = std::sqrt(inner(grad, grad) * inner(v, v));
        CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    }
    // I'(u)[u] = a + q - m
    const FiberingCoefficients c = fibering_coefficients(u, pr);
    const double self = directional_derivative(u, u, pr);
    CHECK(std::abs(self - (c.a + c.q - c.m)) <= 1e-11 * (c.a + std::abs(c.q) + c.m));
    CHECK(c.slope(1.0) == doctest::Approx(c.a + c.q - c.m).epsilon(1e-15));
}

TEST_CASE("fibering coefficients") {
    const GridSpec g(8.0, 64);
    const Problem pr(spec_on(g));
    CHECK_THROWS_AS(fibering_coefficients(ScalarField(g), pr), DegenerateInput);

    const FiberingCoefficients tight = fibering_coefficients(gaussian(g, 0.0, 0.0, 0.1), pr);
    CHECK(tight.q < 0.0);
    const FiberingCoefficients spread = fibering_coefficients(gaussian(g, -5.0, 0.0, 0.3) + gaussian(g, 5.0, 0.0, 0.3), pr);
    CHECK(spread.q > 0.0);
}

TEST_CASE("nehari_project") {
    auto proj = [](double a, double q, double m, double p) { return nehari_project({a, q, m, p}); };
    CHECK(std::abs(proj(1.0, 0.0, 1.0, 6.0) - 1.0) <= 1e-12);
    CHECK(std::abs(proj(1.0, 1.0, 1.0, 6.0) - std::sqrt((1.0 + std::sqrt(5.0)) / 2.0)) <= 1e-12);
    CHECK(proj(1.0, 1.0, 1.0, 6.0) == doctest::Approx(1.2720196).epsilon(1e-7));
    const double t3 = std::sqrt((-0.5 + std::sqrt(4.25)) / 2.0);
    CHECK(std::abs(proj(1.0, -0.5, 1.0, 6.0) - t3) <= 1e-12);
    CHECK(t3 == doctest::Approx(0.8836155).epsilon(1e-7));

    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> pos(1e-3, 1e3);
    std::uniform_real_distribution<double> sgn(-1e3, 1e3);
    std::uniform_real_distribution<double> pe(4.01, 12.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const FiberingCoefficients c{pos(rng), sgn(rng), pos(rng), pe(rng)};
        const double t = nehari_project(c);
        REQUIRE(t > 0.0);
        const double scale = c.a + t * t * std::abs(c.q) + std::pow(t, c.p_exp - 2.0) * c.m;
        REQUIRE(std::abs(c.nehari_function(t)) <= 1e-12 * scale);
    }

    CHECK_THROWS_AS(proj(0.0, 0.0, 1.0, 6.0), DegenerateInput);
    CHECK_THROWS_AS(proj(1.0, 0.0, 0.0, 6.0), DegenerateInput);
    CHECK_THROWS_AS(proj(1.0, 0.0, -1.0, 6.0), DegenerateInput);
    CHECK_THROWS_AS(proj(1.0, 0.0, 1.0, 4.0), DegenerateInput);
}

TEST_CASE("fibering map peaks at the Nehari scale") {
    std::mt19937_64 rng(46);
    const GridSpec g(6.0, 32);
    const Problem pr(spec_on(g, ShiftedModulated{}));
    for (int trial = 0; trial < 10; ++trial) {
        const ScalarField u = smooth_field(g, rng);
        const FiberingCoefficients c = fibering_coefficients(u, pr);
        const double ts = nehari_project(c);
        const double peak = energy(ts * u, pr);
        for (int k = 0; k <= 60; ++k) {
            const double t = ts / 8.0 * std::pow(64.0, k / 60.0);
            const double e = energy(t * u, pr);
            if (std::abs(t / ts - 1.0) > 1e-3) {
                CHECK(e < peak);
            } else {
                CHECK(e <= peak + 1e-12 * std::abs(peak));
            }
        }
        // projected point lies on the Nehari set
        const ScalarField w = ts * u;
        CHECK(std::abs(directional_derivative(w, w, pr)) <= 1e-9 * (1.0 + std::abs(energy(w, pr))));
        // ray falls to -infinity
        CHECK(energy(64.0 * ts * u, pr) < 0.0);
    }
}

TEST_CASE("energy is positive on a small H1 sphere") {
    std::mt19937_64 rng(47);
    const GridSpec g(6.0, 32);
    const Problem pr(spec_on(g));
    const double rho = 0.05;
    for (int trial = 0; trial < 100; ++trial) {
        ScalarField u = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        const double h1 = std::sqrt(dirichlet_energy(u) + std::pow(lp_norm(u, 2.0), 2));
        u *= rho / h1;
        CHECK(energy(u, pr) > 0.0);
    }
}

TEST_CASE("identity and Cerami residual at zero and on random fields") {
    std::mt19937_64 rng(48);
    const GridSpec g(5.0, 32);
    const Problem pr(spec_on(g, Anisotropic{}, 5.5));
    CHECK(identity_check(ScalarField(g), pr) == 0.0);
    CHECK(cerami_residual(ScalarField(g), pr) == 0.0);
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField u = trial % 2 ? noise_field(g, rng) : smooth_field(g, rng);
        REQUIRE(identity_check(u, pr) <= 1e-12);
    }
    const ScalarField u = smooth_field(g, rng);
    const Diagnostics d = diagnose(u, pr);
    CHECK(d.energy == energy(u, pr));
    CHECK(d.cerami_residual > 0.0);
    CHECK(d.nehari_gap == doctest::Approx(std::abs(directional_derivative(u, u, pr))));
    CHECK(d.residual_l2 == doctest::Approx(lp_norm(gradient_field(u, pr), 2.0)));
}

TEST_CASE("metric solve") {
    std::mt19937_64 rng(49);
    const GridSpec g(4.0, 32);
    const Problem pr(spec_on(g));
    const ScalarField rhs = noise_field(g, rng);
    const MetricSolve s = solve_metric(rhs, pr, 1e-12);
    CHECK(s.converged);
    const ScalarField back = apply_metric(s.solution, pr);
    ScalarField r = back;
    r -= rhs;
    CHECK(lp_norm(r, 2.0) <= 1e-11 * lp_norm(rhs, 2.0));
    // dual norm equals sup over v of <g, v> / |v|_X, attained at v = M^{-1} g
    const double dn = dual_norm(rhs, pr);
    const double xn = std::sqrt(inner(apply_metric(s.solution, pr), s.solution));
    CHECK(dn == doctest::Approx(inner(rhs, s.solution) / xn).epsilon(1e-9));
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField v = noise_field(g, rng);
        CHECK(std::abs(inner(rhs, v)) <= dn * std::sqrt(inner(apply_metric(v, pr), v)) * (1.0 + 1e-9));
    }
}
