#include <doctest.h>

#include <random>

#include "logsp/kernels.hpp"
#include "logsp/logkernel.hpp"
#include "logsp/random_fields.hpp"

using namespace logsp;

TEST_CASE("serial and OpenMP direct sums agree bit for bit") {
    std::mt19937_64 rng(21);
    for (int n : {8, 16, 24}) {
        const GridSpec g(2.0, n);
        const KernelTable table(g, KernelKind::log);
        const ScalarField f = noise_field(g, rng);
        const ScalarField h = noise_field(g, rng);
        CHECK(bilinear(table, f, h, kernels::Exec::serial) == bilinear(table, f, h, kernels::Exec::omp));

        ScalarField a(g);
        ScalarField b(g);
        kernels::direct_convolve(n, table.values(), f.values(), a.values(), kernels::Exec::serial);
        kernels::direct_convolve(n, table.values(), f.values(), b.values(), kernels::Exec::omp);
        for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
    }
}

TEST_CASE("results do not depend on the thread count") {
    std::mt19937_64 rng(22);
    const GridSpec g(2.0, 16);
    const KernelTable table(g, KernelKind::log1pinv);
    const ScalarField f = noise_field(g, rng);
    kernels::set_thread_count(1);
    const double one = bilinear(table, f, f);
    const double l2_one = lp_norm(f, 2.0);
    kernels::set_thread_count(3);
    const double three = bilinear(table, f, f);
    const double l2_three = lp_norm(f, 2.0);
    kernels::set_thread_count(0);
    CHECK(one == three);
    CHECK(l2_one == l2_three);
}

TEST_CASE("shifted Laplacian serial and OpenMP forms agree") {
    std::mt19937_64 rng(23);
    const GridSpec g(2.0, 32);
    const ScalarField diag = noise_field(g, rng, 1.0, 2.0);
    const ScalarField u = noise_field(g, rng);
    ScalarField a(g);
    ScalarField b(g);
    kernels::apply_shifted_laplacian(g.n(), g.h(), diag.values(), u.values(), a.values(), kernels::Exec::serial);
    kernels::apply_shifted_laplacian(g.n(), g.h(), diag.values(), u.values(), b.values(), kernels::Exec::omp);
    for (std::size_t k = 0; k < a.size(); ++k) REQUIRE(a[k] == b[k]);
}

TEST_CASE("compensated summation") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
}
