#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "logsp/validate.hpp"

namespace logsp::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 1,
    kNotConverged = 2,
    kValidationFailed = 3,
};

/// Solves the configured problem and writes summary.json, field.csv and
/// history.csv into `out_dir` (or the config's `out` when empty).
int solve_cmd(const std::filesystem::path& config_path, const std::optional<std::filesystem::path>& out_dir,
              std::ostream& log, std::ostream& err);

int validate_cmd(const ValidationOptions& options, std::ostream& log);

/// CSV `n,t_direct_s,t_fast_s,rel_err`; direct sums are skipped above n = 48.
int bench_cmd(const std::vector<int>& sizes, std::ostream& log, std::ostream& err);

/// One solve per value of `axis` (p, gamma, b, L or n) with the config's seed;
/// writes sweep.csv plus one sub-directory per run.
int sweep_cmd(const std::filesystem::path& config_path, const std::string& axis, const std::vector<double>& values,
              const std::optional<std::filesystem::path>& out_dir, std::ostream& log, std::ostream& err);

/// Parses "16,32,64" into numbers. Throws std::invalid_argument.
std::vector<double> parse_csv_values(const std::string& text);

} // namespace logsp::cli
