#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "logsp/grid.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

/// Radial kernels of the nonlocal term. log = log1p - log1pinv pointwise;
/// riesz (1/r) dominates log1pinv and is used for the HLS comparison.
enum class KernelKind { log, log1p, log1pinv, riesz };

const char* to_string(KernelKind kind) noexcept;

/// k(r) for r > 0.
double kernel_value(KernelKind kind, double r);

/// Average of k(|z|) over the square cell [-h/2, h/2]^2, by adaptive
/// quadrature in the polar angle with the radial integral in closed form.
/// Absolute accuracy 1e-12.
double cell_average(KernelKind kind, double h);

/// k sampled at every displacement between two cell centres of a grid,
/// a (2n-1) x (2n-1) table; the zero displacement holds the cell average.
class KernelTable {
public:
    KernelTable(const GridSpec& grid, KernelKind kind);

    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
    [[nodiscard]] KernelKind kind() const noexcept { return kind_; }
    [[nodiscard]] int width() const noexcept { return 2 * grid_.n() - 1; }
    /// Kernel at displacement (di h, dj h), |di|, |dj| < n.
    [[nodiscard]] double at(int di, int dj) const noexcept {
        return values_[static_cast<std::size_t>(di + grid_.n() - 1) * width() + (dj + grid_.n() - 1)];
    }
    [[nodiscard]] double singular_cell_value() const noexcept { return at(0, 0); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

private:
    GridSpec grid_;
    KernelKind kind_;
    std::vector<double> values_;
};

/// Convolution layout. free_space zero-pads to 2n per side; periodic wraps the
/// kernel onto an n x n torus and exists only to demonstrate aliasing.
enum class Padding { free_space, periodic };

/// Precomputed transform of a kernel table for fast discrete convolution.
/// Immutable after construction; convolve() allocates its own workspace, so
/// concurrent calls on one plan are safe.
class ConvolutionPlan {
public:
    explicit ConvolutionPlan(const GridSpec& grid, KernelKind kind = KernelKind::log,
                             Padding padding = Padding::free_space);
    ~ConvolutionPlan();
    ConvolutionPlan(const ConvolutionPlan&) = delete;
    ConvolutionPlan& operator=(const ConvolutionPlan&) = delete;
    ConvolutionPlan(ConvolutionPlan&&) noexcept;
    ConvolutionPlan& operator=(ConvolutionPlan&&) noexcept;

    [[nodiscard]] const GridSpec& grid() const noexcept;
    [[nodiscard]] KernelKind kind() const noexcept;
    [[nodiscard]] int padded_size() const noexcept;
    [[nodiscard]] const KernelTable& table() const noexcept;

    /// out[a] = sum_b k(x_a - x_b) src[b]   (no h^2 factor)
    [[nodiscard]] ScalarField convolve(const ScalarField& src) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// (1/2pi) h^2 sum_b log|x_a - x_b| u_b^2 through the padded transform.
ScalarField phi_u(const ScalarField& u, const ConvolutionPlan& plan);

/// Same quantity by O(n^4) direct summation.
ScalarField phi_u_direct(const ScalarField& u, const KernelTable& log_table,
                         kernels::Exec exec = kernels::Exec::omp);

enum class BilinearMode { fast, direct };

/// h^4 sum_{a,b} k(x_a - x_b) f_a g_b by direct summation.
double bilinear(const KernelTable& table, const ScalarField& f, const ScalarField& g,
                kernels::Exec exec = kernels::Exec::omp);

/// h^4 sum_a f_a (k * g)_a through a plan.
double bilinear(const ConvolutionPlan& plan, const ScalarField& f, const ScalarField& g);

/// Dispatching form. The fast mode only exists for the log kernel; B1 and B2
/// are direct-only. Throws InvalidParameter on an unsupported combination.
double bilinear(KernelKind kind, const ScalarField& f, const ScalarField& g, BilinearMode mode);

struct VEnergies {
    double v0 = 0.0;
    std::optional<double> v1;  ///< B1(u^2, u^2), direct; empty above the size threshold
    std::optional<double> v2;  ///< B2(u^2, u^2), direct; empty above the size threshold
};

/// V0 by the fast path; V1 and V2 by direct summation when n <= direct_limit.
VEnergies v_energies(const ScalarField& u, const ConvolutionPlan& plan, int direct_limit = 32);

struct HlsCheck {
    double v2 = 0.0;         ///< B2(u^2, u^2)
    double riesz = 0.0;      ///< h^4 sum u^2 u^2 / |x - y| with the cell-averaged 1/r at r = 0
    double l83_ratio = 0.0;  ///< riesz / |u|_{8/3}^4, 0 for u = 0
    bool holds = true;       ///< v2 <= riesz
};

/// Compares B2(u^2, u^2) with the Riesz integral that dominates it.
HlsCheck hls_chain_check(const ScalarField& u);

} // namespace logsp
