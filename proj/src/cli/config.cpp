#include "ltt/cli.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ltt::cli {
namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw ConfigError("config: missing key '" + where + key + "'");
    return obj.at(key);
}

double number(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number()) throw ConfigError("config: '" + where + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError("config: '" + where + key + "' must be finite");
    return d;
}

int integer(const json& obj, const char* key, const std::string& where) {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) throw ConfigError("config: '" + where + key + "' must be an integer");
    return v.get<int>();
}

// A number, or a constant expression such as "4*pi".
double scalar(const json& v, const std::string& what) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            const Expression e = parse(v.get<std::string>());
            if (e.is_constant()) return e.value();
        } catch (const ParseError&) {
        }
    }
    throw ConfigError("config: " + what + " must be a number or a constant expression");
}

HeatMode mode(const json& m, std::size_t i) {
    const std::string where = "params.modes[" + std::to_string(i) + "]";
    if (m.is_array() && m.size() == 2) return {scalar(m[0], where + "[0]"), scalar(m[1], where + "[1]")};
    if (m.is_object())
        return {scalar(require(m, "amplitude", where + "."), where + ".amplitude"),
                scalar(require(m, "frequency", where + "."), where + ".frequency")};
    throw ConfigError("config: " + where + " must be [amplitude, frequency] or {amplitude, frequency}");
}

}  // namespace

std::string_view to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::newton_cooling: return "newton_cooling";
        case ProblemKind::heat_1d: return "heat_1d";
        case ProblemKind::pme_hpm: return "pme_hpm";
    }
    return "?";
}

std::vector<double> Grid::t_values() const {
    std::vector<double> v;
    for (int i = 0; i < t_steps; ++i) v.push_back(i + 1 == t_steps ? t_max : t_min + i * (t_max - t_min) / (t_steps - 1));
    return v;
}

std::vector<double> Grid::x_values() const {
    std::vector<double> v;
    for (int i = 0; i < x_steps; ++i) v.push_back(i + 1 == x_steps ? x_max : x_min + i * (x_max - x_min) / (x_steps - 1));
    return v;
}

ProblemConfig parse_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    ProblemConfig cfg;
    cfg.source_json = root.dump();
    const json& kind = require(root, "kind", "");
    if (!kind.is_string()) throw ConfigError("config: 'kind' must be a string");
    const std::string k = kind.get<std::string>();
    const json& p = require(root, "params", "");
    if (!p.is_object()) throw ConfigError("config: 'params' must be an object");

    const bool pde = k != "newton_cooling";
    if (k == "newton_cooling") {
        cfg.kind = ProblemKind::newton_cooling;
        cfg.params = NewtonCoolingParams{number(p, "h", "params."),      number(p, "M", "params."),
                                         number(p, "rho", "params."),    number(p, "Lambda", "params."),
                                         number(p, "c_p", "params."),    number(p, "beta0", "params.")};
    } else if (k == "heat_1d") {
        cfg.kind = ProblemKind::heat_1d;
        HeatProblem h{number(p, "k", "params."), number(p, "L", "params."), {}};
        const json& modes = require(p, "modes", "params.");
        if (!modes.is_array() || modes.empty()) throw ConfigError("config: 'params.modes' must be a non-empty array");
        for (std::size_t i = 0; i < modes.size(); ++i) h.modes.push_back(mode(modes[i], i));
        cfg.params = h;
    } else if (k == "pme_hpm") {
        cfg.kind = ProblemKind::pme_hpm;
        const json& init = require(p, "initial", "params.");
        if (!init.is_string()) throw ConfigError("config: 'params.initial' must be an expression string");
        cfg.params = PmeParams{number(p, "alpha", "params."), init.get<std::string>(), integer(p, "n_terms", "params.")};
    } else {
        throw ConfigError("config: unknown kind '" + k + "' (expected newton_cooling, heat_1d or pme_hpm)");
    }

    const json& g = require(root, "grid", "");
    cfg.grid.t_min = number(g, "t_min", "grid.");
    cfg.grid.t_max = number(g, "t_max", "grid.");
    cfg.grid.t_steps = integer(g, "t_steps", "grid.");
    if (!(cfg.grid.t_min >= 0.0 && cfg.grid.t_min < cfg.grid.t_max))
        throw ConfigError("config: grid needs 0 <= t_min < t_max");
    if (cfg.grid.t_steps < 2) throw ConfigError("config: grid.t_steps must be at least 2");
    if (pde) {
        cfg.grid.x_min = number(g, "x_min", "grid.");
        cfg.grid.x_max = number(g, "x_max", "grid.");
        cfg.grid.x_steps = integer(g, "x_steps", "grid.");
        if (!(cfg.grid.x_min < cfg.grid.x_max)) throw ConfigError("config: grid needs x_min < x_max");
        if (cfg.grid.x_steps < 2) throw ConfigError("config: grid.x_steps must be at least 2");
    }

    const json& out = require(root, "output", "");
    const json& path = require(out, "path", "output.");
    if (!path.is_string() || path.get<std::string>().empty()) throw ConfigError("config: 'output.path' must be a path");
    cfg.output_path = path.get<std::string>();
    const json& fmt = require(out, "format", "output.");
    if (fmt == "csv")
        cfg.format = OutputFormat::csv;
    else if (fmt == "json")
        cfg.format = OutputFormat::json;
    else
        throw ConfigError("config: 'output.format' must be \"csv\" or \"json\"");
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace ltt::cli
