#include "ltt/cli.hpp"

#include "ltt/inverse.hpp"
#include "ltt/transform.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ltt::cli {
namespace {

struct TransformArgs {
    std::string expr;
    double s = 0.0;
    double u = 0.0;
    std::string mode = "symbolic";
};

struct InvertArgs {
    std::string image;
    double t_min = 0.5;
    double t_max = 5.0;
    int t_steps = 10;
    std::string method = "hyperbolic";
    int M = 32;
    bool M_given = false;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
    const Expression v = parse(a.expr);
    const TransformVars vars(a.s, a.u);
    if (v.depends_on(Var::x)) throw OutsideGrammarError("transform: '" + a.expr + "' depends on x");
    if (a.mode == "symbolic") {
        const RationalTransform V = table_transform(v);
        growth_bound_below(v, vars.ratio());  // throws DivergenceError at or below the abscissa
        out << "image: " << display_numbers(V.to_su_string()) << "\n";
        out << "value: " << display(V(vars)) << "\n";
        return kOk;
    }
    const double q = forward_numeric(v, vars);
    out << "quadrature: " << display(q) << "\n";
    try {
        const RationalTransform V = table_transform(v);
        const double sym = V(vars);
        out << "image: " << display_numbers(V.to_su_string()) << "\n";
        out << "symbolic: " << display(sym) << "\n";
        out << "difference: " << display(q - sym) << "\n";
    } catch (const OutsideGrammarError&) {
        out << "symbolic: unavailable\n";
    }
    return kOk;
}

int cmd_invert(const InvertArgs& a, std::ostream& out) {
    const RationalTransform V = parse_image(a.image);
    InversionConfig cfg;
    cfg.method = parse_inversion_method(a.method);
    cfg.M = a.M_given || cfg.method != InversionMethod::stehfest ? a.M : 14;
    cfg.validate();
    if (!(a.t_min > 0.0 && a.t_min < a.t_max) || a.t_steps < 2)
        throw std::invalid_argument("invert: need 0 < t-min < t-max and t-steps >= 2");
    const Expression v = invert_symbolic(V);
    out << "v(t) = " << display_numbers(v.to_string()) << "\n";
    out << "t,symbolic,numeric\n";
    for (int i = 0; i < a.t_steps; ++i) {
        const double t = i + 1 == a.t_steps ? a.t_max : a.t_min + i * (a.t_max - a.t_min) / (a.t_steps - 1);
        out << display(t) << "," << display(eval(v, {.t = t})) << "," << display(invert_numeric(V, t, cfg)) << "\n";
    }
    return kOk;
}

int cmd_solve(const std::string& path, std::ostream& out) {
    const ProblemConfig cfg = load_config(path);
    SolveOutcome outcome;
    try {
        outcome = solve(cfg);
    } catch (const SolverError&) {
        throw;
    } catch (const Error& e) {
        throw SolverError(e.what());
    } catch (const std::invalid_argument& e) {
        throw SolverError(e.what());
    }
    write_table(outcome.table, cfg.output_path, cfg.format);
    if (!outcome.image.empty()) out << "image: " << display_numbers(outcome.image) << "\n";
    out << "solution: " << display_numbers(outcome.closed_form) << "\n";
    out << "wrote " << outcome.table.rows.size() << " rows to " << cfg.output_path << " in "
        << display(outcome.table.runtime_seconds) << " s\n";
    return kOk;
}

int cmd_selftest(std::ostream& out) {
    int failed = 0;
    for (const auto& r : run_selftest()) {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  " << r.detail << "\n";
        failed += !r.passed;
    }
    out << (failed ? "selftest: " + std::to_string(failed) + " failed" : std::string("selftest: all passed")) << "\n";
    return failed ? kFailure : kOk;
}

}  // namespace

std::string display(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string display_numbers(std::string_view text) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        const bool starts = std::isdigit(static_cast<unsigned char>(text[i])) &&
                            (i == 0 || !std::isalpha(static_cast<unsigned char>(text[i - 1])));
        if (!starts) {
            out += text[i++];
            continue;
        }
        const std::string rest(text.substr(i));
        std::size_t used = 0;
        const double v = std::stod(rest, &used);
        out += display(v);
        i += used;
    }
    return out;
}

SolveOutcome solve(const ProblemConfig& cfg) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome o;
    ResultTable& tab = o.table;
    tab.metadata = {{"config", cfg.source_json}, {"version", std::string(kVersion)}};
    const auto ts = cfg.grid.t_values();
    const auto xs = cfg.grid.x_values();

    switch (cfg.kind) {
        case ProblemKind::newton_cooling: {
            const auto& p = std::get<NewtonCoolingParams>(cfg.params);
            const Expression v = solve_newton_cooling(p);
            o.image = newton_cooling_image(p).to_su_string();
            o.closed_form = v.to_string();
            tab.columns = {"t", "v"};
            for (double t : ts) tab.rows.push_back({t, eval(v, {.t = t})});
            break;
        }
        case ProblemKind::heat_1d: {
            const auto& p = std::get<HeatProblem>(cfg.params);
            const Expression v = solve_heat_1d(p);
            o.closed_form = v.to_string();
            tab.columns = {"x", "t", "v"};
            for (double x : xs)
                for (double t : ts) tab.rows.push_back({x, t, eval(v, {.t = t, .x = x})});
            break;
        }
        case ProblemKind::pme_hpm: {
            const auto& p = std::get<PmeParams>(cfg.params);
            const SeriesSolution sol = solve_pme_hpm(p.alpha, parse(p.initial), p.n_terms);
            o.closed_form = sol.to_string();
            tab.columns = {"x", "t", "v"};
            for (double x : xs)
                for (double t : ts) tab.rows.push_back({x, t, evaluate_series(sol, x, t)});
            break;
        }
    }
    tab.metadata.emplace_back("solution", o.closed_form);
    tab.validate();
    tab.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Two-variable Laplace-type transform: forward images, inversion and model solvers", "ltt"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 numerical or I/O failure, 2 parse/argument/config error, 3 divergent transform,\n"
        "4 outside the closed-form grammar, 5 improper rational image, 6 solver error.");

    TransformArgs ta;
    auto* transform = app.add_subcommand("transform", "Image of v(t) at (s,u)");
    transform->add_option("expr", ta.expr, "Expression in t, e.g. \"sin(3*t)\"")->required();
    transform->add_option("--s", ta.s, "s > 0")->required();
    transform->add_option("--u", ta.u, "u > 0")->required();
    transform->add_option("--mode", ta.mode, "symbolic or numeric")
        ->check(CLI::IsMember({"symbolic", "numeric"}))
        ->capture_default_str();

    InvertArgs ia;
    auto* invert = app.add_subcommand("invert", "Inverse of a rational image in (s,u)");
    invert->add_option("image", ia.image, "Image, e.g. \"3u^2/(s^2+9u^2)\"")->required();
    invert->add_option("--t-min", ia.t_min, "First sample time")->capture_default_str();
    invert->add_option("--t-max", ia.t_max, "Last sample time")->capture_default_str();
    invert->add_option("--t-steps", ia.t_steps, "Number of samples")->capture_default_str();
    invert->add_option("--method", ia.method, "hyperbolic, talbot, stehfest or partial_fractions")
        ->capture_default_str();
    auto* m_opt = invert->add_option("--M", ia.M, "Node count: talbot (default 32), stehfest (default 14)");

    std::string config_path;
    auto* solve_cmd = app.add_subcommand("solve", "Run a configured problem and write its table");
    solve_cmd->add_option("config", config_path, "JSON configuration")->required();

    app.add_subcommand("selftest", "Check the golden values of the worked examples");

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kParse;
    }

    ia.M_given = m_opt->count() > 0;
    try {
        if (*transform) return cmd_transform(ta, out);
        if (*invert) return cmd_invert(ia, out);
        if (*solve_cmd) return cmd_solve(config_path, out);
        return cmd_selftest(out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return kParse;
    } catch (const DivergenceError& e) {
        err << "divergent: " << e.what() << "\n";
        return kDivergence;
    } catch (const OutsideGrammarError& e) {
        err << "outside grammar: " << e.what() << "\n";
        return kOutsideGrammar;
    } catch (const ImproperRationalError& e) {
        err << "improper image: " << e.what() << "\n";
        return kImproper;
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolver;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kParse;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace ltt::cli
