// Serial reference vs OpenMP direct sums vs the padded FFT path.

#include <benchmark/benchmark.h>

#include <random>

#include "logsp/logkernel.hpp"
#include "logsp/random_fields.hpp"

namespace {

using namespace logsp;

ScalarField density(int n) {
    std::mt19937_64 rng(11);
    const ScalarField u = smooth_field(GridSpec(4.0, n), rng, 3, true);
    ScalarField rho(u.grid());
    for (std::size_t k = 0; k < u.size(); ++k) rho[k] = u[k] * u[k];
    return rho;
}

void BM_DirectSerial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField rho = density(n);
    const KernelTable table(rho.grid(), KernelKind::log);
    for (auto _ : state) benchmark::DoNotOptimize(bilinear(table, rho, rho, kernels::Exec::serial));
}

void BM_DirectOmp(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField rho = density(n);
    const KernelTable table(rho.grid(), KernelKind::log);
    for (auto _ : state) benchmark::DoNotOptimize(bilinear(table, rho, rho, kernels::Exec::omp));
}

void BM_Fast(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const ScalarField rho = density(n);
    const ConvolutionPlan plan(rho.grid());
    for (auto _ : state) benchmark::DoNotOptimize(bilinear(plan, rho, rho));
}

void BM_ShiftedLaplacian(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto exec = state.range(1) == 0 ? kernels::Exec::serial : kernels::Exec::omp;
    const ScalarField rho = density(n);
    ScalarField out(rho.grid());
    for (auto _ : state) {
        kernels::apply_shifted_laplacian(n, rho.grid().h(), rho.values(), rho.values(), out.values(), exec);
        benchmark::DoNotOptimize(out.values().data());
    }
}

} // namespace

BENCHMARK(BM_DirectSerial)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DirectOmp)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fast)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShiftedLaplacian)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
