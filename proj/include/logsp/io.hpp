#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "logsp/grid.hpp"
#include "logsp/solver.hpp"

namespace logsp::io {

/// Writes `i,j,x,y,u` rows, row-major over i then j, reals at 17 significant digits.
void write_field_csv(std::ostream& os, const ScalarField& u);
void write_field_csv(const std::filesystem::path& path, const ScalarField& u);

/// Reads a field written by write_field_csv onto `grid`; every cell must be
/// present once and the coordinates must match the grid's cell centres.
ScalarField read_field_csv(std::istream& is, const GridSpec& grid);
ScalarField read_field_csv(const std::filesystem::path& path, const GridSpec& grid);

/// `iteration,energy,cerami_residual,step`
void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRow>& history);

/// Serialises JSON with every floating-point number at 17 significant digits.
std::string dump_json(const nlohmann::json& j, int indent = 2);

/// "%.17g"
std::string format_real(double x);

} // namespace logsp::io
