#include "logsp/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "logsp/error.hpp"
#include "logsp/kernels.hpp"

namespace logsp {

using kernels::reduce_rows;

GridSpec::GridSpec(double half_width, int n) : half_width_(half_width), n_(n), h_(0.0) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw InvalidParameter("grid half width must be finite and > 0");
    }
    if (n < 8) throw InvalidParameter("grid needs at least 8 cells per side, got " + std::to_string(n));
    if (n % 2 != 0) throw InvalidParameter("grid cell count must be even, got " + std::to_string(n));
    h_ = 2.0 * half_width / n;
    if (h_ * n != 2.0 * half_width) {
        throw InvalidParameter("2L/n is not exactly representable for L=" + std::to_string(half_width) +
                               ", n=" + std::to_string(n) + "; choose n a power of two");
    }
}

ScalarField::ScalarField(const GridSpec& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const GridSpec& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InvalidField("field has " + std::to_string(values_.size()) + " values, grid needs " +
                           std::to_string(grid_.size()));
    }
}

ScalarField ScalarField::from_function(const GridSpec& grid,
                                       const std::function<double(double, double)>& f) {
    ScalarField u(grid);
    for (int i = 0; i < grid.n(); ++i)
        for (int j = 0; j < grid.n(); ++j) u(i, j) = f(grid.x(i), grid.y(j));
    return u;
}

void ScalarField::require_finite() const {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw InvalidField("non-finite field entry at flat index " + std::to_string(k));
        }
    }
}

bool ScalarField::is_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double ScalarField::max_abs() const noexcept {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

ScalarField& ScalarField::operator*=(double c) noexcept {
    for (double& v : values_) v *= c;
    return *this;
}

ScalarField& ScalarField::axpy(double c, const ScalarField& other) {
    require_same_grid(*this, other);
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += c * other.values_[k];
    return *this;
}

ScalarField operator*(double c, ScalarField u) {
    u *= c;
    return u;
}

ScalarField operator+(ScalarField a, const ScalarField& b) {
    a += b;
    return a;
}

ScalarField operator-(ScalarField a, const ScalarField& b) {
    a -= b;
    return a;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) {
        throw GridMismatch("fields live on different grids (n=" + std::to_string(a.grid().n()) + " vs " +
                           std::to_string(b.grid().n()) + ")");
    }
}

double lp_norm(const ScalarField& u, double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidParameter("lp_norm needs finite p >= 1");
    u.require_finite();
    const int n = u.grid().n();
    const auto vals = u.values();
    const double sum = reduce_rows(n, [&](int i) {
        CompensatedSum s;
        for (int j = 0; j < n; ++j) {
            const double a = std::abs(vals[static_cast<std::size_t>(i) * n + j]);
            s.add(p == 2.0 ? a * a : std::pow(a, p));
        }
        return s.value();
    });
    return std::pow(u.grid().cell_area() * sum, 1.0 / p);
}

namespace {

// Sum over all edges of jump(u) * jump(v); jumps across the box boundary see a
// zero ghost value.
double edge_pairing(const ScalarField& u, const ScalarField& v) {
    const int n = u.grid().n();
    const auto a = u.values();
    const auto b = v.values();
    return reduce_rows(n, [&](int i) {
        CompensatedSum s;
        const std::size_t row = static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const std::size_t k = row + j;
            const double ua = a[k];
            const double vb = b[k];
            // x-edge towards i-1 (ghost when i == 0)
            s.add((ua - (i > 0 ? a[k - n] : 0.0)) * (vb - (i > 0 ? b[k - n] : 0.0)));
            if (i == n - 1) s.add(ua * vb);
            // y-edge towards j-1
            s.add((ua - (j > 0 ? a[k - 1] : 0.0)) * (vb - (j > 0 ? b[k - 1] : 0.0)));
            if (j == n - 1) s.add(ua * vb);
        }
        return s.value();
    });
}

} // namespace

double dirichlet_energy(const ScalarField& u) {
    u.require_finite();
    return edge_pairing(u, u);
}

double dirichlet_pairing(const ScalarField& u, const ScalarField& v) {
    require_same_grid(u, v);
    return edge_pairing(u, v);
}

ScalarField neg_laplacian(const ScalarField& u) {
    ScalarField out(u.grid());
    const std::vector<double> zero(u.size(), 0.0);
    kernels::apply_shifted_laplacian(u.grid().n(), u.grid().h(), zero, u.values(), out.values(),
                                     kernels::Exec::omp);
    return out;
}

double weighted_pairing(const ScalarField& u, const ScalarField& v, const ScalarField& w) {
    require_same_grid(u, v);
    require_same_grid(u, w);
    const int n = u.grid().n();
    const auto a = u.values();
    const auto b = v.values();
    const auto c = w.values();
    const double sum = reduce_rows(n, [&](int i) {
        CompensatedSum s;
        const std::size_t row = static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) s.add(c[row + j] * a[row + j] * b[row + j]);
        return s.value();
    });
    return u.grid().cell_area() * sum;
}

double weighted_mass(const ScalarField& u, const ScalarField& w) { return weighted_pairing(u, u, w); }

double inner(const ScalarField& u, const ScalarField& v) {
    require_same_grid(u, v);
    const int n = u.grid().n();
    const auto a = u.values();
    const auto b = v.values();
    const double sum = reduce_rows(n, [&](int i) {
        CompensatedSum s;
        const std::size_t row = static_cast<std::size_t>(i) * n;
        for (int j = 0; j < n; ++j) s.add(a[row + j] * b[row + j]);
        return s.value();
    });
    return u.grid().cell_area() * sum;
}

ScalarField log_weight(const GridSpec& grid) {
    return ScalarField::from_function(grid, [](double x, double y) { return std::log1p(std::hypot(x, y)); });
}

NormReport norms(const ScalarField& u, const ScalarField& v_samples, double p) {
    u.require_finite();
    require_same_grid(u, v_samples);
    NormReport r;
    r.p = p;
    r.l2 = lp_norm(u, 2.0);
    r.lp = lp_norm(u, p);
    r.dirichlet = dirichlet_energy(u);
    r.v_weighted = weighted_mass(u, v_samples);
    r.star = weighted_mass(u, log_weight(u.grid()));
    r.x_norm_sq = r.dirichlet + r.v_weighted + r.star;
    r.h1_sq = r.dirichlet + r.l2 * r.l2;
    return r;
}

} // namespace logsp
