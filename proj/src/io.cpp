#include "logsp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "logsp/error.hpp"

namespace logsp::io {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_field_csv(std::ostream& os, const ScalarField& u) {
    const GridSpec& g = u.grid();
    os << "i,j,x,y,u\n";
    std::string line;
    for (int i = 0; i < g.n(); ++i) {
        for (int j = 0; j < g.n(); ++j) {
            line.clear();
            line += std::to_string(i);
            line += ',';
            line += std::to_string(j);
            line += ',';
            line += format_real(g.x(i));
            line += ',';
            line += format_real(g.y(j));
            line += ',';
            line += format_real(u(i, j));
            line += '\n';
            os << line;
        }
    }
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    write_field_csv(os, u);
}

ScalarField read_field_csv(std::istream& is, const GridSpec& grid) {
    std::string line;
    if (!std::getline(is, line)) throw InvalidField("field csv is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "i,j,x,y,u") throw InvalidField("field csv header must be 'i,j,x,y,u', got '" + line + "'");

    ScalarField u(grid);
    std::vector<char> seen(grid.size(), 0);
    std::size_t count = 0;
    const double tol = 1e-9 * grid.half_width();
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        std::istringstream row(line);
        std::string cell[5];
        for (int c = 0; c < 5; ++c) {
            if (!std::getline(row, cell[c], ',')) {
                throw InvalidField("field csv line " + std::to_string(line_no) + " has fewer than 5 columns");
            }
        }
        int i = 0;
        int j = 0;
        double x = 0.0;
        double y = 0.0;
        double v = 0.0;
        try {
            i = std::stoi(cell[0]);
            j = std::stoi(cell[1]);
            x = std::stod(cell[2]);
            y = std::stod(cell[3]);
            v = std::stod(cell[4]);
        } catch (const std::exception&) {
            throw InvalidField("field csv line " + std::to_string(line_no) + " is not numeric");
        }
        if (i < 0 || j < 0 || i >= grid.n() || j >= grid.n()) {
            throw InvalidField("field csv line " + std::to_string(line_no) + " index out of range");
        }
        if (std::abs(x - grid.x(i)) > tol || std::abs(y - grid.y(j)) > tol) {
            throw GridMismatch("field csv line " + std::to_string(line_no) + " coordinates do not match the grid");
        }
        if (!std::isfinite(v)) throw InvalidField("field csv line " + std::to_string(line_no) + " is not finite");
        const std::size_t k = grid.index(i, j);
        if (seen[k] != 0) throw InvalidField("field csv repeats cell (" + cell[0] + "," + cell[1] + ")");
        seen[k] = 1;
        u[k] = v;
        ++count;
    }
    if (count != grid.size()) {
        throw InvalidField("field csv has " + std::to_string(count) + " cells, grid needs " +
                           std::to_string(grid.size()));
    }
    return u;
}

ScalarField read_field_csv(const std::filesystem::path& path, const GridSpec& grid) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open field file " + path.string());
    return read_field_csv(is, grid);
}

void write_history_csv(const std::filesystem::path& path, const std::vector<HistoryRow>& history) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open " + path.string() + " for writing");
    os << "iteration,energy,cerami_residual,step\n";
    for (const auto& r : history) {
        os << r.iteration << ',' << format_real(r.energy) << ',' << format_real(r.cerami_residual) << ','
           << format_real(r.step) << '\n';
    }
}

namespace {

void dump(const nlohmann::json& j, int indent, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump(it.value(), indent, depth + 1, out);
            }
            out += '\n';
            out += close_pad;
            out += '}';
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (std::size_t k = 0; k < j.size(); ++k) {
                if (k > 0) out += ",\n";
                out += pad;
                dump(j[k], indent, depth + 1, out);
            }
            out += '\n';
            out += close_pad;
            out += ']';
            return;
        }
        case nlohmann::json::value_t::number_float: {
            const double x = j.get<double>();
            // JSON has no NaN/Inf literals.
            out += std::isfinite(x) ? format_real(x) : "null";
            return;
        }
        default: out += j.dump(); return;
    }
}

} // namespace

std::string dump_json(const nlohmann::json& j, int indent) {
    std::string out;
    dump(j, indent, 0, out);
    out += '\n';
    return out;
}

} // namespace logsp::io
