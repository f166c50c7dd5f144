#pragma once

#include <array>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "logsp/grid.hpp"

namespace logsp {

/// V = c0 + a |x|^2
struct Harmonic {
    double c0 = 1.0;
    double a = 1.0;
};

/// V = c0 + a |x1|^alpha + b |x2|^beta
struct Anisotropic {
    double c0 = 1.0;
    double a = 1.0;
    double alpha = 2.0;
    double b = 1.0;
    double beta = 4.0;
};

/// V = c0 + a |x - x0|^2 (1 + eps sin(k theta)), theta the polar angle about x0.
/// With x0 != 0 and eps != 0 the potential has neither a rotation nor a
/// coordinate-axis reflection symmetry, and no periodic structure.
struct ShiftedModulated {
    double c0 = 1.0;
    double a = 1.0;
    std::array<double, 2> x0{1.0, -0.5};
    double eps = 0.5;
    double k = 1.0;
};

/// Samples given directly on a grid.
struct Tabulated {
    std::shared_ptr<const ScalarField> samples;
};

/// Symbolic description of the trapping potential.
class PotentialSpec {
public:
    using Kind = std::variant<Harmonic, Anisotropic, ShiftedModulated, Tabulated>;

    PotentialSpec();  // harmonic(1, 1)
    template <class T>
        requires std::is_constructible_v<Kind, T>
    PotentialSpec(T kind) : kind_(std::move(kind)) {}  // NOLINT: implicit by intent

    [[nodiscard]] const Kind& kind() const noexcept { return kind_; }
    [[nodiscard]] std::string name() const;
    /// Closed-form value at a point; not available for the tabulated kind.
    [[nodiscard]] double at(double x, double y) const;
    /// Lower bound c0 guaranteed by the parameters (min sample for tabulated).
    [[nodiscard]] double lower_bound() const;

private:
    Kind kind_;
};

/// Checks parameters (c0 > 0, a > 0, |eps| < 1, ...). Throws InvalidParameter.
void validate(const PotentialSpec& v);

/// Samples V at cell centres.
ScalarField evaluate(const PotentialSpec& v, const GridSpec& grid);

/// Convenience overload of grid_core's norms() taking the potential directly.
NormReport norms(const ScalarField& u, const PotentialSpec& v, double p = 2.0);

struct SublevelReport {
    double level = 0.0;         ///< M
    double area = 0.0;          ///< h^2 #{cells : V <= M}
    std::size_t cells = 0;
    double boundary_distance = 0.0;  ///< distance of the set from the box boundary, +inf if empty
    bool touches_boundary = false;   ///< a cell of the outermost ring lies in the set
};

struct HypothesisReport {
    double min_value = 0.0;
    bool positive_lower_bound = false;  ///< min V > 0
    std::vector<SublevelReport> levels;
    std::vector<std::string> warnings;
};

/// Sampled check of positivity and finite-measure sublevel sets. Advisory:
/// a finite box cannot certify the latter.
HypothesisReport check_hypothesis_V(const PotentialSpec& v, const GridSpec& grid,
                                    const std::vector<double>& levels);

} // namespace logsp
