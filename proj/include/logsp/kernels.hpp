#pragma once

// Data-parallel inner loops. Every kernel exists in a serial reference form
// and an OpenMP form; both accumulate each row with compensated summation and
// fold the row partials in a fixed order, so the two agree bit for bit and
// neither depends on the thread count.

#include <cstddef>
#include <span>
#include <vector>

#include "logsp/summation.hpp"

namespace logsp::kernels {

enum class Exec { serial, omp };

/// Number of threads the OpenMP kernels use (honours LOGSP_THREADS).
int thread_count();
/// Caps the OpenMP kernels at `n` threads; n <= 0 restores the default.
void set_thread_count(int n);

/// Sums row_fn(r) for r in [0, rows) with a deterministic fold.
template <class RowFn>
double reduce_rows(int rows, RowFn&& row_fn, Exec exec = Exec::omp) {
    std::vector<double> partial(static_cast<std::size_t>(rows), 0.0);
    if (exec == Exec::omp) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
        for (int r = 0; r < rows; ++r) partial[static_cast<std::size_t>(r)] = row_fn(r);
    } else {
        for (int r = 0; r < rows; ++r) partial[static_cast<std::size_t>(r)] = row_fn(r);
    }
    return compensated_sum(partial);
}

/// Free-space discrete convolution by direct summation:
///   out[a] = sum_b table[a - b] * src[b]
/// on an n x n grid, where `table` holds the (2n-1) x (2n-1) kernel samples
/// indexed by displacement (di + n - 1, dj + n - 1). O(n^4).
void direct_convolve(int n, std::span<const double> table, std::span<const double> src,
                     std::span<double> out, Exec exec);

/// sum_{a,b} f[a] * table[a - b] * g[b] by direct summation. O(n^4).
double direct_bilinear(int n, std::span<const double> table, std::span<const double> f,
                       std::span<const double> g, Exec exec);

/// out = (4 u - neighbours) / h^2 + diag * u with zero ghost cells.
void apply_shifted_laplacian(int n, double h, std::span<const double> diag,
                             std::span<const double> u, std::span<double> out, Exec exec);

} // namespace logsp::kernels
