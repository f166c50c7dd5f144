#include "logsp/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "logsp/config.hpp"
#include "logsp/io.hpp"
#include "logsp/kernels.hpp"
#include "logsp/random_fields.hpp"
#include "logsp/solver.hpp"

namespace logsp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json norms_json(const NormReport& r) {
    return {{"l2", r.l2},   {"p", r.p},       {"lp", r.lp},           {"dirichlet", r.dirichlet},
            {"v_weighted", r.v_weighted}, {"star", r.star}, {"x_norm_sq", r.x_norm_sq}, {"h1_sq", r.h1_sq}};
}

struct RunOutcome {
    GroundStateResult result;
    double wall_time_s = 0.0;
};

RunOutcome run(const RunConfig& cfg) {
    const auto t0 = std::chrono::steady_clock::now();
    const ProblemSpec spec = make_problem_spec(cfg);
    const Problem problem(spec);
    RunOutcome out{solve(problem, make_solver_config(cfg, spec.grid)), 0.0};
    out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

void write_outputs(const RunConfig& cfg, const RunOutcome& outcome, const fs::path& dir) {
    fs::create_directories(dir);
    const GroundStateResult& r = outcome.result;
    const ProblemSpec spec = make_problem_spec(cfg);
    const NormReport nr = norms(r.u_final, spec.potential, spec.p_exp);
    const double min_u = *std::min_element(r.u_final.values().begin(), r.u_final.values().end());

    json summary = {
        {"status", to_string(r.status)},
        {"converged", r.status == SolveStatus::converged},
        {"message", r.message},
        {"energy", r.energy},
        {"residual_l2", r.diagnostics.residual_l2},
        {"cerami_residual", r.diagnostics.cerami_residual},
        {"nehari_gap", r.diagnostics.nehari_gap},
        {"identity_gap", r.diagnostics.identity_gap},
        {"iterations", r.iterations},
        {"restarts", r.restarts},
        {"norms", norms_json(nr)},
        {"ray_max_check", {{"gap", r.ray.gap}, {"maximizer", r.ray.maximizer}}},
        {"symmetry_report", symmetry_report(r.u_final)},
        {"min_u", min_u},
        {"dual_norm_model", "X-metric dual norm with M = -Lap_h + V + log(1+|x|), CG rel tol 1e-10"},
        {"history_file", "history.csv"},
        {"wall_time_s", outcome.wall_time_s},
        {"config", to_json(cfg)},
        {"version", LOGSP_VERSION},
    };
    std::ofstream(dir / "summary.json", std::ios::binary) << io::dump_json(summary);
    io::write_field_csv(dir / "field.csv", r.u_final);
    io::write_history_csv(dir / "history.csv", r.history);
}

} // namespace

int solve_cmd(const fs::path& config_path, const std::optional<fs::path>& out_dir, std::ostream& log,
              std::ostream& err) {
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    if (out_dir) cfg.out_dir = out_dir->string();
    try {
        const RunOutcome outcome = run(cfg);
        write_outputs(cfg, outcome, cfg.out_dir);
        const GroundStateResult& r = outcome.result;
        log << "status " << to_string(r.status) << ", energy " << io::format_real(r.energy) << ", cerami "
            << io::format_real(r.diagnostics.cerami_residual) << ", iterations " << r.iterations << '\n';
        if (r.status != SolveStatus::converged) {
            err << "solve did not converge: " << r.message << '\n';
            return kNotConverged;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        err << "solve failed: " << e.what() << '\n';
        return kNotConverged;
    }
}

int validate_cmd(const ValidationOptions& options, std::ostream& log) {
    const auto results = run_validation(options);
    return print_validation(log, results) ? kOk : kValidationFailed;
}

namespace {

template <class F>
double best_time(F&& f, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

} // namespace

int bench_cmd(const std::vector<int>& sizes, std::ostream& log, std::ostream& err) {
    for (int n : sizes) {
        if (n < 8 || n % 2 != 0) {
            err << "bench sizes must be even and >= 8, got " << n << '\n';
            return kConfigError;
        }
    }
    log << "n,t_direct_s,t_fast_s,rel_err\n";
    std::mt19937_64 rng(7);
    for (int n : sizes) {
        const GridSpec grid(4.0, n);
        const ScalarField u = smooth_field(grid, rng, 3, true);
        ScalarField rho(grid);
        for (std::size_t k = 0; k < u.size(); ++k) rho[k] = u[k] * u[k];
        const ConvolutionPlan plan(grid);
        double fast = 0.0;
        const double t_fast = best_time([&] { fast = bilinear(plan, rho, rho); }, 5);
        log << n << ',';
        if (n <= 48) {
            const KernelTable table(grid, KernelKind::log);
            double direct = 0.0;
            const double t_direct = best_time([&] { direct = bilinear(table, rho, rho); }, 1);
            log << io::format_real(t_direct) << ',' << io::format_real(t_fast) << ','
                << io::format_real(std::abs(fast - direct) / std::abs(direct)) << '\n';
        } else {
            log << "skipped," << io::format_real(t_fast) << ",skipped\n";
        }
    }
    return kOk;
}

std::vector<double> parse_csv_values(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw std::invalid_argument("empty entry in value list");
        item = item.substr(first, item.find_last_not_of(" \t") - first + 1);
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw std::invalid_argument("empty value list");
    return out;
}

int sweep_cmd(const fs::path& config_path, const std::string& axis, const std::vector<double>& values,
              const std::optional<fs::path>& out_dir, std::ostream& log, std::ostream& err) {
    static const char* axes[] = {"p", "gamma", "b", "L", "n"};
    if (std::find(std::begin(axes), std::end(axes), axis) == std::end(axes)) {
        err << "unknown sweep axis '" << axis << "' (expected p, gamma, b, L or n)\n";
        return kConfigError;
    }
    if (values.empty()) {
        err << "sweep needs at least one value\n";
        return kConfigError;
    }
    RunConfig base;
    try {
        base = load_config(config_path);
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    const fs::path root = out_dir ? *out_dir : fs::path(base.out_dir);
    fs::create_directories(root);

    std::ostringstream table;
    table << "value,energy,cerami_residual,iterations,status\n";
    bool any_failed = false;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const double value = values[k];
        RunConfig cfg = base;
        std::string status;
        std::string energy = "nan";
        std::string residual = "nan";
        std::string iterations = "0";
        try {
            if (axis == "p") cfg.p_exp = value;
            if (axis == "gamma") cfg.gamma = value;
            if (axis == "b") cfg.b_coef = value;
            if (axis == "L") cfg.half_width = value;
            if (axis == "n") {
                if (value != std::floor(value)) throw ConfigError("n must be an integer");
                cfg.n = static_cast<int>(value);
            }
            cfg = parse_config(to_json(cfg), base.base_dir);
            cfg.out_dir = (root / (axis + "_" + std::to_string(k))).string();
            const RunOutcome outcome = run(cfg);
            write_outputs(cfg, outcome, cfg.out_dir);
            const GroundStateResult& r = outcome.result;
            status = to_string(r.status);
            energy = io::format_real(r.energy);
            residual = io::format_real(r.diagnostics.cerami_residual);
            iterations = std::to_string(r.iterations);
            if (r.status != SolveStatus::converged) any_failed = true;
        } catch (const std::exception& e) {
            err << axis << " = " << value << ": " << e.what() << '\n';
            status = "error";
            any_failed = true;
        }
        table << io::format_real(value) << ',' << energy << ',' << residual << ',' << iterations << ',' << status
              << '\n';
    }
    std::ofstream(root / "sweep.csv", std::ios::binary) << table.str();
    log << table.str();
    return any_failed ? kNotConverged : kOk;
}

} // namespace logsp::cli
