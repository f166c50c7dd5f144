#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace logsp {

/// Truncated computational square [-L, L]^2 split into n x n cells of side
/// h = 2L / n. Fields are sampled at cell centres and extended by zero.
class GridSpec {
public:
    GridSpec(double half_width, int n);

    [[nodiscard]] double half_width() const noexcept { return half_width_; }
    [[nodiscard]] int n() const noexcept { return n_; }
    [[nodiscard]] double h() const noexcept { return h_; }
    [[nodiscard]] double cell_area() const noexcept { return h_ * h_; }
    [[nodiscard]] std::size_t size() const noexcept {
        return static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_);
    }
    [[nodiscard]] double x(int i) const noexcept { return -half_width_ + (i + 0.5) * h_; }
    [[nodiscard]] double y(int j) const noexcept { return -half_width_ + (j + 0.5) * h_; }
    [[nodiscard]] std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
    }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;

private:
    double half_width_;
    int n_;
    double h_;
};

/// Real values on the cells of a grid, stored row-major over i (x) then j (y).
class ScalarField {
public:
    explicit ScalarField(const GridSpec& grid, double fill = 0.0);
    ScalarField(const GridSpec& grid, std::vector<double> values);

    static ScalarField from_function(const GridSpec& grid,
                                     const std::function<double(double, double)>& f);

    [[nodiscard]] const GridSpec& grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<double> values() noexcept { return values_; }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    double& operator()(int i, int j) noexcept { return values_[grid_.index(i, j)]; }
    double operator()(int i, int j) const noexcept { return values_[grid_.index(i, j)]; }
    double& operator[](std::size_t k) noexcept { return values_[k]; }
    double operator[](std::size_t k) const noexcept { return values_[k]; }

    /// Throws InvalidField if any entry is NaN or infinite.
    void require_finite() const;
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] double max_abs() const noexcept;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double c) noexcept;
    /// this += c * other
    ScalarField& axpy(double c, const ScalarField& other);

private:
    GridSpec grid_;
    std::vector<double> values_;
};

ScalarField operator*(double c, ScalarField u);
ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);

/// Throws GridMismatch unless both fields share a grid.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// Every norm the energy space uses, evaluated on one field.
struct NormReport {
    double l2 = 0.0;          ///< |u|_2
    double p = 2.0;           ///< exponent used for `lp`
    double lp = 0.0;          ///< |u|_p
    double dirichlet = 0.0;   ///< int |grad u|^2
    double v_weighted = 0.0;  ///< int V u^2
    double star = 0.0;        ///< int log(1+|x|) u^2
    double x_norm_sq = 0.0;   ///< dirichlet + v_weighted + star
    double h1_sq = 0.0;       ///< dirichlet + l2^2
};

/// (h^2 sum |u|^p)^(1/p).
double lp_norm(const ScalarField& u, double p);

/// Forward-difference Dirichlet energy with zero ghost cells:
/// sum over every cell edge (including the box boundary) of the squared jump.
double dirichlet_energy(const ScalarField& u);

/// Polarised form of dirichlet_energy: sum over edges of jump(u) * jump(v).
double dirichlet_pairing(const ScalarField& u, const ScalarField& v);

/// Discrete -Laplacian, the exact adjoint of the forward-difference gradient:
/// h^2 <neg_laplacian(u), v> == dirichlet_pairing(u, v).
ScalarField neg_laplacian(const ScalarField& u);

/// h^2 sum w u^2.
double weighted_mass(const ScalarField& u, const ScalarField& w);

/// h^2 sum w u v.
double weighted_pairing(const ScalarField& u, const ScalarField& v, const ScalarField& w);

/// h^2 sum u v.
double inner(const ScalarField& u, const ScalarField& v);

/// Samples of log(1 + |x|), the weight of the star norm.
ScalarField log_weight(const GridSpec& grid);

/// Fills every NormReport entry; `v_samples` are the potential values on the grid.
NormReport norms(const ScalarField& u, const ScalarField& v_samples, double p = 2.0);

} // namespace logsp
