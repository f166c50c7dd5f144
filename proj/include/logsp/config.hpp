#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "logsp/error.hpp"
#include "logsp/functional.hpp"
#include "logsp/solver.hpp"

namespace logsp {

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Everything one `solve` run needs. Built from a JSON document whose keys are
///   L, n, p, gamma, b, potential{kind, ...}, max_iter, tol_cerami,
///   tol_energy_stall, step0, step_shrink, step_grow, armijo, seed,
///   init{kind, ...}, positivity, max_restarts, out
/// with every key optional (defaults below) and unknown keys rejected.
struct RunConfig {
    double half_width = 8.0;
    int n = 64;
    double p_exp = 6.0;
    double gamma = 2.0 * std::numbers::pi;
    double b_coef = 1.0;
    nlohmann::json potential = {{"kind", "harmonic"}, {"c0", 1.0}, {"a", 1.0}};
    nlohmann::json init = {{"kind", "gaussian"}, {"center", {0.0, 0.0}}, {"width", 1.0}, {"amplitude", 1.0}};
    SolverConfig solver{};
    std::string out_dir = "out";
    /// Directory that relative file names in the document resolve against.
    std::filesystem::path base_dir = ".";
};

/// Parses and validates (including the physics: p > 4, ...). Throws ConfigError.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = ".");
RunConfig load_config(const std::filesystem::path& path);

/// The fully resolved configuration with every default materialised.
nlohmann::json to_json(const RunConfig& cfg);

/// Builds the problem (reads tabulated potentials) and the solver settings
/// (reads tabulated initial fields). Throws ConfigError.
ProblemSpec make_problem_spec(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg, const GridSpec& grid);

} // namespace logsp
