#include "logsp/config.hpp"

#include <fstream>
#include <set>

#include "logsp/io.hpp"

namespace logsp {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.contains(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
    }
}

double number(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(where + "." + key + " must be a number");
    return v.get<double>();
}

std::array<double, 2> point(const json& obj, const char* key, std::array<double, 2> fallback,
                            const std::string& where) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(where + "." + key + " must be an array of two numbers");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

std::string kind_of(const json& obj, const std::string& where) {
    if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string()) {
        throw ConfigError(where + " needs a string 'kind'");
    }
    return obj.at("kind").get<std::string>();
}

// Canonical, defaults-materialised potential object.
json normalise_potential(const json& in) {
    const std::string where = "potential";
    const std::string kind = kind_of(in, where);
    if (kind == "harmonic") {
        reject_unknown(in, {"kind", "c0", "a"}, where);
        const Harmonic d;
        return {{"kind", kind}, {"c0", number(in, "c0", d.c0, where)}, {"a", number(in, "a", d.a, where)}};
    }
    if (kind == "anisotropic") {
        reject_unknown(in, {"kind", "c0", "a", "alpha", "b", "beta"}, where);
        const Anisotropic d;
        return {{"kind", kind},
                {"c0", number(in, "c0", d.c0, where)},
                {"a", number(in, "a", d.a, where)},
                {"alpha", number(in, "alpha", d.alpha, where)},
                {"b", number(in, "b", d.b, where)},
                {"beta", number(in, "beta", d.beta, where)}};
    }
    if (kind == "shifted_modulated") {
        reject_unknown(in, {"kind", "c0", "a", "x0", "eps", "k"}, where);
        const ShiftedModulated d;
        const auto x0 = point(in, "x0", d.x0, where);
        return {{"kind", kind},
                {"c0", number(in, "c0", d.c0, where)},
                {"a", number(in, "a", d.a, where)},
                {"x0", {x0[0], x0[1]}},
                {"eps", number(in, "eps", d.eps, where)},
                {"k", number(in, "k", d.k, where)}};
    }
    if (kind == "tabulated") {
        reject_unknown(in, {"kind", "file"}, where);
        if (!in.contains("file") || !in.at("file").is_string()) throw ConfigError("tabulated potential needs 'file'");
        return {{"kind", kind}, {"file", in.at("file")}};
    }
    throw ConfigError("unknown potential kind '" + kind + "'");
}

json normalise_init(const json& in) {
    const std::string where = "init";
    const std::string kind = kind_of(in, where);
    if (kind == "gaussian") {
        reject_unknown(in, {"kind", "center", "width", "amplitude"}, where);
        const GaussianInit d;
        const auto c = point(in, "center", d.center, where);
        return {{"kind", kind},
                {"center", {c[0], c[1]}},
                {"width", number(in, "width", d.width, where)},
                {"amplitude", number(in, "amplitude", d.amplitude, where)}};
    }
    if (kind == "two_bump") {
        reject_unknown(in, {"kind", "first", "second", "width", "amplitude"}, where);
        const TwoBumpInit d;
        const auto a = point(in, "first", d.first, where);
        const auto b = point(in, "second", d.second, where);
        return {{"kind", kind},
                {"first", {a[0], a[1]}},
                {"second", {b[0], b[1]}},
                {"width", number(in, "width", d.width, where)},
                {"amplitude", number(in, "amplitude", d.amplitude, where)}};
    }
    if (kind == "random") {
        reject_unknown(in, {"kind", "width"}, where);
        return {{"kind", kind}, {"width", number(in, "width", RandomInit{}.width, where)}};
    }
    if (kind == "tabulated") {
        reject_unknown(in, {"kind", "file"}, where);
        if (!in.contains("file") || !in.at("file").is_string()) throw ConfigError("tabulated init needs 'file'");
        return {{"kind", kind}, {"file", in.at("file")}};
    }
    throw ConfigError("unknown init kind '" + kind + "'");
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& file) {
    const std::filesystem::path p(file);
    return p.is_absolute() ? p : base / p;
}

} // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    reject_unknown(doc,
                   {"L", "n", "p", "gamma", "b", "potential", "max_iter", "tol_cerami", "tol_energy_stall", "step0",
                    "step_shrink", "step_grow", "armijo", "seed", "init", "positivity", "max_restarts", "out"},
                   "config");
    RunConfig cfg;
    cfg.base_dir = base_dir;
    const std::string where = "config";
    cfg.half_width = number(doc, "L", cfg.half_width, where);
    if (doc.contains("n")) {
        if (!doc.at("n").is_number_integer()) throw ConfigError("config.n must be an integer");
        cfg.n = doc.at("n").get<int>();
    }
    cfg.p_exp = number(doc, "p", cfg.p_exp, where);
    cfg.gamma = number(doc, "gamma", cfg.gamma, where);
    cfg.b_coef = number(doc, "b", cfg.b_coef, where);
    if (doc.contains("potential")) cfg.potential = doc.at("potential");
    cfg.potential = normalise_potential(cfg.potential);
    if (doc.contains("init")) cfg.init = doc.at("init");
    cfg.init = normalise_init(cfg.init);

    SolverConfig& s = cfg.solver;
    if (doc.contains("max_iter")) {
        if (!doc.at("max_iter").is_number_integer()) throw ConfigError("config.max_iter must be an integer");
        s.max_iter = doc.at("max_iter").get<int>();
    }
    if (doc.contains("max_restarts")) {
        if (!doc.at("max_restarts").is_number_integer()) throw ConfigError("config.max_restarts must be an integer");
        s.max_restarts = doc.at("max_restarts").get<int>();
    }
    s.tol_cerami = number(doc, "tol_cerami", s.tol_cerami, where);
    s.tol_energy_stall = number(doc, "tol_energy_stall", s.tol_energy_stall, where);
    s.step0 = number(doc, "step0", s.step0, where);
    s.step_shrink = number(doc, "step_shrink", s.step_shrink, where);
    s.step_grow = number(doc, "step_grow", s.step_grow, where);
    s.armijo = number(doc, "armijo", s.armijo, where);
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) throw ConfigError("config.seed must be a non-negative integer");
        s.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("positivity")) {
        const json& v = doc.at("positivity");
        if (v == "project_each_iter") {
            s.positivity = Positivity::project_each_iter;
        } else if (v == "project_at_end") {
            s.positivity = Positivity::project_at_end;
        } else {
            throw ConfigError("positivity must be 'project_each_iter' or 'project_at_end'");
        }
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw ConfigError("config.out must be a string");
        cfg.out_dir = doc.at("out").get<std::string>();
    }

    // Everything, including file-backed potentials and initial fields, is
    // validated before any computation starts.
    try {
        const ProblemSpec spec = make_problem_spec(cfg);
        validate(spec);
        validate(make_solver_config(cfg, spec.grid));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config " + path.string());
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

json to_json(const RunConfig& cfg) {
    const SolverConfig& s = cfg.solver;
    return {{"L", cfg.half_width},
            {"n", cfg.n},
            {"p", cfg.p_exp},
            {"gamma", cfg.gamma},
            {"b", cfg.b_coef},
            {"potential", cfg.potential},
            {"max_iter", s.max_iter},
            {"tol_cerami", s.tol_cerami},
            {"tol_energy_stall", s.tol_energy_stall},
            {"step0", s.step0},
            {"step_shrink", s.step_shrink},
            {"step_grow", s.step_grow},
            {"armijo", s.armijo},
            {"seed", s.seed},
            {"init", cfg.init},
            {"positivity", s.positivity == Positivity::project_each_iter ? "project_each_iter" : "project_at_end"},
            {"max_restarts", s.max_restarts},
            {"out", cfg.out_dir}};
}

ProblemSpec make_problem_spec(const RunConfig& cfg) {
    try {
        ProblemSpec spec;
        spec.grid = GridSpec(cfg.half_width, cfg.n);
        spec.p_exp = cfg.p_exp;
        spec.gamma = cfg.gamma;
        spec.b_coef = cfg.b_coef;
        const json& v = cfg.potential;
        const std::string kind = v.at("kind").get<std::string>();
        if (kind == "harmonic") {
            spec.potential = Harmonic{v.at("c0").get<double>(), v.at("a").get<double>()};
        } else if (kind == "anisotropic") {
            spec.potential = Anisotropic{v.at("c0").get<double>(), v.at("a").get<double>(), v.at("alpha").get<double>(),
                                         v.at("b").get<double>(), v.at("beta").get<double>()};
        } else if (kind == "shifted_modulated") {
            spec.potential = ShiftedModulated{v.at("c0").get<double>(),
                                              v.at("a").get<double>(),
                                              {v.at("x0")[0].get<double>(), v.at("x0")[1].get<double>()},
                                              v.at("eps").get<double>(),
                                              v.at("k").get<double>()};
        } else {
            const auto path = resolve(cfg.base_dir, v.at("file").get<std::string>());
            spec.potential = Tabulated{std::make_shared<const ScalarField>(io::read_field_csv(path, spec.grid))};
        }
        validate(spec.potential);
        return spec;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
}

SolverConfig make_solver_config(const RunConfig& cfg, const GridSpec& grid) {
    SolverConfig s = cfg.solver;
    const json& v = cfg.init;
    const std::string kind = v.at("kind").get<std::string>();
    try {
        if (kind == "gaussian") {
            s.init = GaussianInit{{v.at("center")[0].get<double>(), v.at("center")[1].get<double>()},
                                  v.at("width").get<double>(),
                                  v.at("amplitude").get<double>()};
        } else if (kind == "two_bump") {
            s.init = TwoBumpInit{{v.at("first")[0].get<double>(), v.at("first")[1].get<double>()},
                                 {v.at("second")[0].get<double>(), v.at("second")[1].get<double>()},
                                 v.at("width").get<double>(),
                                 v.at("amplitude").get<double>()};
        } else if (kind == "random") {
            s.init = RandomInit{v.at("width").get<double>()};
        } else {
            const auto path = resolve(cfg.base_dir, v.at("file").get<std::string>());
            s.init = TabulatedInit{std::make_shared<const ScalarField>(io::read_field_csv(path, grid))};
        }
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    return s;
}

} // namespace logsp
