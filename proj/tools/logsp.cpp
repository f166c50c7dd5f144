// logsp: ground states of the planar Schroedinger-Poisson equation with a
// logarithmic kernel, plus the invariant checks that go with them.

#include <CLI11.hpp>

#include <iostream>

#include "logsp/commands.hpp"
#include "logsp/kernels.hpp"

int main(int argc, char** argv) {
    using namespace logsp;

    CLI::App app{"Planar Schroedinger-Poisson solver with logarithmic kernel"};
    app.set_version_flag("--version", LOGSP_VERSION);
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "Cap on OpenMP threads (overrides LOGSP_THREADS)");

    auto* solve = app.add_subcommand("solve", "Compute a nonnegative ground-state candidate");
    std::string config_path;
    std::string out_dir;
    solve->add_option("--config", config_path, "JSON config")->required();
    solve->add_option("--out", out_dir, "Output directory (default: config 'out')");

    auto* validate = app.add_subcommand("validate", "Run the invariant suites");
    std::string level = "quick";
    bool mutate_periodic = false;
    validate->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    validate->add_flag("--mutate-periodic", mutate_periodic,
                       "Use an unpadded (periodic) convolution; the kernel oracle must fail");

    auto* bench = app.add_subcommand("bench", "Time direct vs fast V0 evaluation");
    std::vector<int> sizes{16, 32, 64, 128};
    bench->add_option("--sizes", sizes, "Grid sizes")->delimiter(',');

    auto* sweep = app.add_subcommand("sweep", "Solve along one parameter axis");
    std::string sweep_config;
    std::string axis;
    std::string values;
    std::string sweep_out;
    sweep->add_option("--config", sweep_config, "JSON config")->required();
    sweep->add_option("--axis", axis, "p, gamma, b, L or n")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--out", sweep_out, "Output directory (default: config 'out')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kConfigError;
    }
    if (threads > 0) kernels::set_thread_count(threads);

    auto optional_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
        if (s.empty()) return std::nullopt;
        return std::filesystem::path(s);
    };

    if (*solve) return cli::solve_cmd(config_path, optional_path(out_dir), std::cout, std::cerr);
    if (*validate) {
        ValidationOptions opts;
        opts.level = level == "full" ? ValidationLevel::full : ValidationLevel::quick;
        opts.padding = mutate_periodic ? Padding::periodic : Padding::free_space;
        return cli::validate_cmd(opts, std::cout);
    }
    if (*bench) return cli::bench_cmd(sizes, std::cout, std::cerr);
    if (*sweep) {
        std::vector<double> parsed;
        try {
            parsed = cli::parse_csv_values(values);
        } catch (const std::exception& e) {
            std::cerr << "bad --values: " << e.what() << '\n';
            return cli::kConfigError;
        }
        return cli::sweep_cmd(sweep_config, axis, parsed, optional_path(sweep_out), std::cout, std::cerr);
    }
    return cli::kConfigError;
}
