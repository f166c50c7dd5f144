#include "logsp/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "logsp/error.hpp"

namespace logsp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

PotentialSpec::PotentialSpec() : kind_(Harmonic{}) {}

std::string PotentialSpec::name() const {
    return std::visit(overloaded{[](const Harmonic&) { return std::string("harmonic"); },
                                 [](const Anisotropic&) { return std::string("anisotropic"); },
                                 [](const ShiftedModulated&) { return std::string("shifted_modulated"); },
                                 [](const Tabulated&) { return std::string("tabulated"); }},
                      kind_);
}

double PotentialSpec::at(double x, double y) const {
    return std::visit(
        overloaded{
            [&](const Harmonic& v) { return v.c0 + v.a * (x * x + y * y); },
            [&](const Anisotropic& v) {
                return v.c0 + v.a * std::pow(std::abs(x), v.alpha) + v.b * std::pow(std::abs(y), v.beta);
            },
            [&](const ShiftedModulated& v) {
                const double dx = x - v.x0[0];
                const double dy = y - v.x0[1];
                const double r2 = dx * dx + dy * dy;
                return v.c0 + v.a * r2 * (1.0 + v.eps * std::sin(v.k * std::atan2(dy, dx)));
            },
            [&](const Tabulated&) -> double {
                throw InvalidParameter("tabulated potential has no closed form");
            }},
        kind_);
}

double PotentialSpec::lower_bound() const {
    return std::visit(overloaded{[](const Harmonic& v) { return v.c0; },
                                 [](const Anisotropic& v) { return v.c0; },
                                 [](const ShiftedModulated& v) { return v.c0; },
                                 [](const Tabulated& v) {
                                     const auto vals = v.samples->values();
                                     return *std::min_element(vals.begin(), vals.end());
                                 }},
                      kind_);
}

void validate(const PotentialSpec& spec) {
    auto positive = [](double x, const char* what) {
        if (!(x > 0.0) || !std::isfinite(x)) throw InvalidParameter(std::string(what) + " must be finite and > 0");
    };
    std::visit(overloaded{[&](const Harmonic& v) {
                              positive(v.c0, "harmonic c0");
                              positive(v.a, "harmonic a");
                          },
                          [&](const Anisotropic& v) {
                              positive(v.c0, "anisotropic c0");
                              positive(v.a, "anisotropic a");
                              positive(v.b, "anisotropic b");
                              positive(v.alpha, "anisotropic alpha");
                              positive(v.beta, "anisotropic beta");
                          },
                          [&](const ShiftedModulated& v) {
                              positive(v.c0, "shifted_modulated c0");
                              positive(v.a, "shifted_modulated a");
                              if (!(std::abs(v.eps) < 1.0)) {
                                  throw InvalidParameter("shifted_modulated needs |eps| < 1 to keep V >= c0");
                              }
                              if (!std::isfinite(v.k) || !std::isfinite(v.x0[0]) || !std::isfinite(v.x0[1])) {
                                  throw InvalidParameter("shifted_modulated parameters must be finite");
                              }
                          },
                          [&](const Tabulated& v) {
                              if (!v.samples) throw InvalidParameter("tabulated potential has no samples");
                              v.samples->require_finite();
                              positive(*std::min_element(v.samples->values().begin(), v.samples->values().end()),
                                       "tabulated potential minimum");
                          }},
               spec.kind());
}

ScalarField evaluate(const PotentialSpec& spec, const GridSpec& grid) {
    validate(spec);
    if (const auto* tab = std::get_if<Tabulated>(&spec.kind())) {
        if (!(tab->samples->grid() == grid)) {
            throw GridMismatch("tabulated potential was sampled on a different grid");
        }
        return *tab->samples;
    }
    return ScalarField::from_function(grid, [&](double x, double y) { return spec.at(x, y); });
}

NormReport norms(const ScalarField& u, const PotentialSpec& v, double p) {
    return norms(u, evaluate(v, u.grid()), p);
}

HypothesisReport check_hypothesis_V(const PotentialSpec& spec, const GridSpec& grid,
                                    const std::vector<double>& levels) {
    const ScalarField v = evaluate(spec, grid);
    const auto vals = v.values();
    HypothesisReport report;
    report.min_value = *std::min_element(vals.begin(), vals.end());
    report.positive_lower_bound = report.min_value > 0.0;
    if (!report.positive_lower_bound) report.warnings.emplace_back("min V <= 0 on the grid");
    if (levels.empty()) report.warnings.emplace_back("no sublevel values requested");
    if (!std::is_sorted(levels.begin(), levels.end())) report.warnings.emplace_back("levels are not increasing");

    const int n = grid.n();
    const double L = grid.half_width();
    for (double level : levels) {
        SublevelReport s;
        s.level = level;
        s.boundary_distance = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (v(i, j) > level) continue;
                ++s.cells;
                // distance from the outer edge of this cell to the box boundary
                const double reach = std::max(std::abs(grid.x(i)), std::abs(grid.y(j))) + 0.5 * grid.h();
                s.boundary_distance = std::min(s.boundary_distance, L - reach);
                if (i == 0 || j == 0 || i == n - 1 || j == n - 1) s.touches_boundary = true;
            }
        }
        s.area = static_cast<double>(s.cells) * grid.cell_area();
        if (s.touches_boundary) {
            report.warnings.push_back("sublevel set {V <= " + std::to_string(level) +
                                      "} touches the box boundary; enlarge L");
        }
        report.levels.push_back(s);
    }
    return report;
}

} // namespace logsp
