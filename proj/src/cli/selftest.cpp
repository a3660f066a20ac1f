#include "ltt/cli.hpp"

#include "ltt/inverse.hpp"
#include "ltt/transform.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace ltt::cli {
namespace {

CheckResult close(std::string name, double got, double want, double rel) {
    const bool ok = std::abs(got - want) <= rel * std::abs(want);
    return {std::move(name), ok, "got " + display(got) + ", want " + display(want)};
}

CheckResult text(std::string name, const std::string& got, const std::string& want) {
    return {std::move(name), got == want, "got '" + got + "', want '" + want + "'"};
}

CheckResult guarded(std::string name, const std::function<CheckResult()>& f) {
    try {
        return f();
    } catch (const std::exception& e) {
        return {std::move(name), false, std::string("threw: ") + e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    using std::numbers::pi;
    std::vector<CheckResult> r;

    r.push_back(guarded("image of sin(3t)", [] {
        return text("image of sin(3t)", table_transform(parse("sin(3*t)")).to_su_string(), "3u^2/(s^2+9u^2)");
    }));
    r.push_back(guarded("sin(3t) at (2,1)", [] {
        return close("sin(3t) at (2,1)", forward_numeric(parse("sin(3*t)"), {2.0, 1.0}), 3.0 / 13.0, 1e-8);
    }));
    r.push_back(guarded("damped sine at (2,1)", [] {
        const Expression v = parse("exp(-4*t)*sin(3*t)");
        return close("damped sine at (2,1)", forward_numeric(v, {2.0, 1.0}), 3.0 / 45.0, 1e-8);
    }));
    r.push_back(guarded("t exp(2t) at (3,1)", [] {
        return close("t exp(2t) at (3,1)", table_transform(parse("t*exp(2*t)"))(TransformVars{3.0, 1.0}), 1.0, 1e-12);
    }));
    r.push_back(guarded("existence gate at s/u = 2", [] {
        try {
            forward_numeric(parse("exp(2*t)"), {2.0, 1.0});
        } catch (const DivergenceError&) {
            return CheckResult{"existence gate at s/u = 2", true, "rejected"};
        }
        return CheckResult{"existence gate at s/u = 2", false, "accepted"};
    }));
    r.push_back(guarded("inverse of 3u^2/(s^2+9u^2)", [] {
        return text("inverse of 3u^2/(s^2+9u^2)", invert_symbolic(parse_image("3u^2/(s^2+9u^2)")).to_string(),
                    "sin(3*t)");
    }));
    r.push_back(guarded("numeric inverse of sin(3t) at t=10", [] {
        return close("numeric inverse of sin(3t) at t=10", invert_numeric(parse_image("3u^2/(s^2+9u^2)"), 10.0),
                     std::sin(30.0), 1e-7);
    }));
    r.push_back(guarded("Newton cooling v(1)", [] {
        const NewtonCoolingParams p{0.5, 1.0, 1.0, 1.0, 1.0, 100.0};
        return close("Newton cooling v(1)", eval(solve_newton_cooling(p), {.t = 1.0}), 100.0 * std::exp(-0.5), 1e-10);
    }));
    r.push_back(guarded("heat 1-D at (0.125, 0.01)", [] {
        const HeatProblem h{2.0, 1.0, {{10.0, 4 * pi}, {-5.0, 6 * pi}}};
        const double want =
            10 * std::exp(-0.32 * pi * pi) * std::sin(pi / 2) - 5 * std::exp(-0.72 * pi * pi) * std::sin(0.75 * pi);
        return close("heat 1-D at (0.125, 0.01)", eval(solve_heat_1d(h), {.t = 0.01, .x = 0.125}), want, 1e-12);
    }));
    r.push_back(guarded("porous medium, alpha = 1", [] {
        return text("porous medium, alpha = 1", solve_pme_hpm(1.0, parse("x"), 4).to_string(), "x + t");
    }));
    r.push_back(guarded("porous medium, alpha = 0.5", [] {
        const SeriesSolution s = solve_pme_hpm(0.5, parse("x"), 4);
        return close("porous medium, alpha = 0.5", evaluate_series(s, 0.3, 0.49), 0.3 + 0.7 / std::tgamma(1.5), 1e-13);
    }));
    return r;
}

}  // namespace ltt::cli
