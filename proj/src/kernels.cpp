#include "logsp/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <cstdlib>
#include <string>

namespace logsp::kernels {

namespace {

int default_threads() {
    if (const char* env = std::getenv("LOGSP_THREADS"); env != nullptr && *env != '\0') {
        try {
            const int n = std::stoi(env);
            if (n > 0) return n;
        } catch (const std::exception&) {
            // unparsable value: fall through to the OpenMP default
        }
    }
    return omp_get_max_threads();
}

std::atomic<int> g_override{0};

} // namespace

int thread_count() {
    const int forced = g_override.load(std::memory_order_relaxed);
    if (forced > 0) return forced;
    static const int from_env = default_threads();
    return from_env;
}

void set_thread_count(int n) { g_override.store(n > 0 ? n : 0, std::memory_order_relaxed); }

namespace {

inline double convolve_at(int n, std::span<const double> table, std::span<const double> src,
                          int i, int j) {
    const int w = 2 * n - 1;
    CompensatedSum s;
    for (int k = 0; k < n; ++k) {
        const double* krow = table.data() + static_cast<std::size_t>(i - k + n - 1) * w + (j + n - 1);
        const double* srow = src.data() + static_cast<std::size_t>(k) * n;
        for (int l = 0; l < n; ++l) {
            if (srow[l] != 0.0) s.add(krow[-l] * srow[l]);
        }
    }
    return s.value();
}

inline void convolve_row(int n, std::span<const double> table, std::span<const double> src,
                         std::span<double> out, int i) {
    for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(i) * n + j] = convolve_at(n, table, src, i, j);
    }
}

} // namespace

void direct_convolve(int n, std::span<const double> table, std::span<const double> src,
                     std::span<double> out, Exec exec) {
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
        for (int i = 0; i < n; ++i) convolve_row(n, table, src, out, i);
    } else {
        for (int i = 0; i < n; ++i) convolve_row(n, table, src, out, i);
    }
}

double direct_bilinear(int n, std::span<const double> table, std::span<const double> f,
                       std::span<const double> g, Exec exec) {
    return reduce_rows(
        n,
        [&](int i) {
            CompensatedSum s;
            for (int j = 0; j < n; ++j) {
                const double fa = f[static_cast<std::size_t>(i) * n + j];
                if (fa != 0.0) s.add(fa * convolve_at(n, table, g, i, j));
            }
            return s.value();
        },
        exec);
}

namespace {

inline void shifted_laplacian_row(int n, double inv_h2, std::span<const double> diag,
                                  std::span<const double> u, std::span<double> out, int i) {
    const std::size_t row = static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
        const std::size_t k = row + j;
        double nb = 0.0;
        if (i > 0) nb += u[k - n];
        if (i + 1 < n) nb += u[k + n];
        if (j > 0) nb += u[k - 1];
        if (j + 1 < n) nb += u[k + 1];
        out[k] = (4.0 * u[k] - nb) * inv_h2 + diag[k] * u[k];
    }
}

} // namespace

void apply_shifted_laplacian(int n, double h, std::span<const double> diag,
                             std::span<const double> u, std::span<double> out, Exec exec) {
    const double inv_h2 = 1.0 / (h * h);
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int i = 0; i < n; ++i) shifted_laplacian_row(n, inv_h2, diag, u, out, i);
    } else {
        for (int i = 0; i < n; ++i) shifted_laplacian_row(n, inv_h2, diag, u, out, i);
    }
}

} // namespace logsp::kernels
