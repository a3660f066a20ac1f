// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Reference values come from the oracles in oracles.hpp and
// from closed forms evaluated with <cmath>, never from the library under test.

#include "function_suite.hpp"
#include "oracles.hpp"
#include "ltt/errors.hpp"
#include "ltt/inverse.hpp"
#include "ltt/opcalc.hpp"
#include "ltt/solvers.hpp"
#include "ltt/transform.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace ltt;
using std::numbers::pi;

namespace {

// Pinned tolerances.
constexpr double kGoldenRel = 1e-8;
constexpr double kGoldenSeconds = 5.0;
constexpr double kDualityRel = 1e-8;
// Floor for image values that are zero up to rounding.
constexpr double kZeroFloor = 1e-13;
constexpr double kHomogeneityRel = 1e-8;
constexpr double kConvolutionTol = 1e-6;
constexpr double kNewtonTol = 1e-10;
constexpr double kHeatFdTol = 1e-3;
constexpr double kHeatSeconds = 30.0;
constexpr double kStructuralRel = 1e-12;
constexpr double kRoundTripTol = 1e-7;
constexpr double kExistenceRel = 1e-8;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;  // keep the first failure
        pass = false;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double rel_err(double got, double want, double floor = 0.0) {
    return std::abs(got - want) / std::max(std::abs(want), floor);
}

double at(const Expression& v, double t) { return eval(v, {.t = t}); }

// ---------------------------------------------------------------------------

Outcome golden_values() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> axis{0.5, 1.0, 2.0, 5.0};
    struct Case {
        std::string text;
        double abscissa;
        std::function<double(double, double)> image;
    };
    std::vector<Case> cases{{"sin(3*t)", 0.0, oracle::image_sin3},
                            {"exp(-4*t)*sin(3*t)", -4.0, oracle::image_damped_sin3}};
    for (double a : {-1.0, 1.0, 2.0})
        cases.push_back({"t*exp(" + fmt("%g", a) + "*t)", a, [a](double s, double u) { return oracle::image_t_exp(s, u, a); }});

    double worst = 0.0;
    int checked = 0, rejected = 0;
    for (const auto& c : cases) {
        const Expression v = parse(c.text);
        const RationalTransform V = table_transform(v);
        for (double s : axis) {
            for (double u : axis) {
                const TransformVars vars(s, u);
                if (!(s / u > c.abscissa)) {
                    try {
                        (void)forward_numeric(v, vars);
                        o.fail(c.text + fmt(" accepted at s=%g, u=%g", s, u));
                    } catch (const DivergenceError&) {
                        ++rejected;
                    }
                    continue;
                }
                const double want = c.image(s, u);
                const double e = std::max(rel_err(forward_numeric(v, vars), want), rel_err(V(vars), want));
                worst = std::max(worst, e);
                ++checked;
                if (e >= kGoldenRel) o.fail(c.text + fmt(" at s=%g, u=%g", s, u));
            }
        }
    }
    const double elapsed = seconds_since(t0);
    if (elapsed >= kGoldenSeconds) o.fail(fmt("runtime %.2f s", elapsed));
    if (o.pass)
        o.detail = std::to_string(checked) + " points, max rel err " + fmt("%.2e", worst) + ", " +
                   std::to_string(rejected) + " divergent points rejected, " + fmt("%.2f s", elapsed);
    return o;
}

Outcome duality() {
    Outcome o;
    double worst = 0.0;
    int n = 0;
    for (const auto& f : suite::kFunctions) {
        const Expression v = parse(f.text);
        const double beta = std::max(exponential_order(v), 0.0);
        for (double dp : {0.5, 1.0, 2.5, 5.0}) {
            const double p = beta + dp;
            const double lap = oracle::laplace([&](double t) { return at(v, t); }, p, dp, f.freq);
            for (double u : {0.5, 1.0, 2.0, 4.0}) {
                const double e = rel_err(forward_numeric(v, {p * u, u}), lap, kZeroFloor);
                worst = std::max(worst, e);
                ++n;
                if (e >= kDualityRel) o.fail(std::string(f.text) + fmt(" at p=%g, u=%g", p, u));
            }
        }
    }
    if (o.pass) o.detail = std::to_string(n) + " points, max rel err " + fmt("%.2e", worst);
    return o;
}

Outcome homogeneity() {
    Outcome o;
    double worst = 0.0;
    int n = 0;
    for (const auto& f : suite::kFunctions) {
        const Expression v = parse(f.text);
        const double beta = std::max(exponential_order(v), 0.0);
        for (double dp : {0.5, 1.0, 2.5, 5.0}) {
            for (double u : {0.5, 1.0, 2.0, 4.0}) {
                const TransformVars vars((beta + dp) * u, u);
                const double base = forward_numeric(v, vars);
                for (double lambda : {0.5, 2.0, 10.0}) {
                    const double e = rel_err(forward_numeric(v, vars.scaled(lambda)), base, kZeroFloor);
                    worst = std::max(worst, e);
                    ++n;
                    if (e >= kHomogeneityRel) o.fail(std::string(f.text) + fmt(" lambda=%g, u=%g", lambda, u));
                }
            }
        }
    }
    if (o.pass) o.detail = std::to_string(n) + " comparisons, max rel err " + fmt("%.2e", worst);
    return o;
}

Outcome operational_rules() {
    Outcome o;
    const Expression t = Expression::variable(Var::t);
    int identities = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const std::string text(suite::kFunctions[i].text);
        const Expression v = parse(text);
        const Expression dv = differentiate(v, Var::t);
        const RationalTransform V = table_transform(v);
        const std::vector<double> ic{at(v, 0.0)};
        auto expect = [&](bool ok, const char* rule) {
            ++identities;
            if (!ok) o.fail(std::string(rule) + " fails for " + text);
        };
        expect(equivalent(derivative_rule(V, ic, 1), table_transform(dv)), "derivative rule");
        // int_0^t v'(tau) dtau = v(t) - v(0)
        expect(equivalent(integral_rule(table_transform(dv)), V - table_transform(Expression::constant(ic[0]))),
               "integral rule");
        for (double a : {-1.25, 0.75})
            expect(equivalent(exp_shift(V, a), table_transform(Expression::exp(a, Var::t) * v)), "exponential shift");
        expect(equivalent(multiple_shift(V, 1), table_transform(t * v)), "multiple shift (n=1)");
        expect(equivalent(multiple_shift(V, 2), table_transform(t * t * v)), "multiple shift (n=2)");
    }

    std::mt19937 rng(20261016);
    std::uniform_int_distribution<std::size_t> pick(0, suite::kFunctions.size() - 1);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        const std::size_t a = pick(rng), b = pick(rng);
        const Expression v = parse(suite::kFunctions[a].text);
        const Expression w = parse(suite::kFunctions[b].text);
        const Expression conv = invert_symbolic(convolution_transform(table_transform(v), table_transform(w)));
        for (double tt : {0.3, 1.0, 2.2}) {
            const double ref = oracle::convolution([&](double x) { return at(v, x); }, [&](double x) { return at(w, x); }, tt);
            const double e = std::abs(at(conv, tt) - ref) / std::max(1.0, std::abs(ref));
            worst = std::max(worst, e);
            if (e >= kConvolutionTol)
                o.fail(std::string("convolution ") + std::string(suite::kFunctions[a].text) + " * " +
                       std::string(suite::kFunctions[b].text) + fmt(" at t=%g", tt));
        }
    }
    if (o.pass)
        o.detail = std::to_string(identities) + " rational identities, 20 convolution pairs, max err " + fmt("%.2e", worst);
    return o;
}

Outcome example_newton() {
    Outcome o;
    // rate = h M / (rho Lambda c_p) = 0.5 for both parameter sets
    for (const NewtonCoolingParams& p : {NewtonCoolingParams{0.5, 1, 1, 1, 1, 100}, NewtonCoolingParams{2, 3, 4, 1.5, 2, 100}}) {
        const Expression v = solve_newton_cooling(p);
        const Expression want = Expression::constant(100.0) * Expression::exp(-0.5, Var::t);
        if (!approx_equal(v, want, kStructuralRel)) o.fail("closed form " + v.to_string());
        const RationalTransform V = newton_cooling_image(p);
        for (int i = 0; i <= 20; ++i) {
            const double t = 0.5 * i;
            const double ref = 100.0 * std::exp(-0.5 * t);
            if (rel_err(at(v, t), ref) >= kNewtonTol) o.fail(fmt("closed form sample at t=%g", t));
            if (t > 0 && rel_err(invert_numeric(V, t), ref) >= kNewtonTol) o.fail(fmt("numeric inverse at t=%g", t));
        }
        const double v1 = at(v, 1.0);
        if (std::abs(v1 - 60.65306597126334) >= kNewtonTol) o.fail(fmt("v(1) = %.12g", v1));
    }
    if (o.pass) o.detail = "100*exp(-0.5*t), v(1) = " + fmt("%.11g", 100.0 * std::exp(-0.5));
    return o;
}

Outcome example_heat() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const HeatProblem prob{2.0, 5.0, {{10.0, 4 * pi}, {-5.0, 6 * pi}}};
    const Expression v = solve_heat_1d(prob);
    const Expression want =
        Expression::constant(10.0) * Expression::exp(-32 * pi * pi, Var::t) * Expression::sin(4 * pi, Var::x) -
        Expression::constant(5.0) * Expression::exp(-72 * pi * pi, Var::t) * Expression::sin(6 * pi, Var::x);
    if (!approx_equal(v, want, kStructuralRel)) o.fail("closed form " + v.to_string());

    std::vector<double> times, xs;
    for (int j = 0; j <= 20; ++j) times.push_back(0.05 * j / 20);
    for (int i = 0; i <= 20; ++i) xs.push_back(5.0 * i / 20);
    const auto fd = oracle::heat_fd(prob.k, prob.L, 0.01, [](double x) {
        return 10 * std::sin(4 * pi * x) - 5 * std::sin(6 * pi * x);
    }, times);
    double worst = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j)
        for (double x : xs)
            worst = std::max(worst, std::abs(oracle::interpolate(fd, fd.snapshots[j], x) - eval(v, {.t = times[j], .x = x})));
    const double elapsed = seconds_since(t0);
    if (worst >= kHeatFdTol) o.fail(fmt("max FD difference %.3e", worst));
    if (elapsed >= kHeatSeconds) o.fail(fmt("runtime %.2f s", elapsed));
    if (o.pass) o.detail = "21x21 grid, max FD difference " + fmt("%.2e", worst) + fmt(", %.2f s", elapsed);
    return o;
}

Outcome example_pme() {
    Outcome o;
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const auto sol = solve_pme_hpm(alpha, parse("x"), 4);
        if (sol.terms.size() != 5) {
            o.fail(fmt("alpha=%g: wrong term count", alpha));
            continue;
        }
        if (!(sol.terms[0] == MonomialSum::single({1.0, 1, 0.0}))) o.fail(fmt("alpha=%g: v0", alpha));
        // v1 = t^alpha / Gamma(1 + alpha)
        if (!(sol.terms[1] == MonomialSum::single({1.0, 0, alpha}))) o.fail(fmt("alpha=%g: v1", alpha));
        for (std::size_t n = 2; n < sol.terms.size(); ++n)
            if (!sol.terms[n].is_zero()) o.fail(fmt("alpha=%g: v%g nonzero", alpha, static_cast<double>(n)));
        const double x = 0.7, t = 0.4;
        if (std::abs(evaluate_series(sol, x, t) - (x + std::pow(t, alpha) / std::tgamma(1 + alpha))) > 1e-13)
            o.fail(fmt("alpha=%g: series value", alpha));
    }
    const auto one = solve_pme_hpm(1.0, parse("x"), 4);
    if (one.to_string() != "x + t") o.fail("alpha=1 prints '" + one.to_string() + "'");
    const Expression v = parse("x + t");
    const Expression residual = differentiate(v, Var::t) - differentiate(v * differentiate(v, Var::x), Var::x);
    if (!residual.is_zero()) o.fail("residual " + residual.to_string());
    if (o.pass) o.detail = "v0 = x, v1 = t^a/Gamma(1+a), v2..v4 = 0; alpha=1 gives 'x + t', residual 0";
    return o;
}

Outcome round_trip() {
    Outcome o;
    std::vector<double> grid;
    for (int i = 0; i < 40; ++i) grid.push_back(0.01 * std::pow(1000.0, i / 39.0));
    double worst = 0.0;
    for (const auto& f : suite::kFunctions) {
        const std::string text(f.text);
        const Expression v = parse(text);
        const RationalTransform V = table_transform(v);
        const Expression back = invert_symbolic(V);
        if (!approx_equal(back, normal_form(v), kStructuralRel)) o.fail("structural: " + text + " -> " + back.to_string());
        for (double t : grid) {
            const double want = at(v, t);
            const double e = std::abs(invert_numeric(V, t) - want) / std::max(1.0, std::abs(want));
            worst = std::max(worst, e);
            if (e >= kRoundTripTol) o.fail("numeric: " + text + fmt(" at t=%g", t));
        }
    }
    if (o.pass) o.detail = "25 functions structural; 1000 numeric samples, max err " + fmt("%.2e", worst);
    return o;
}

Outcome existence_gate() {
    Outcome o;
    const Expression v = parse("exp(2*t)");
    for (auto [s, u] : std::vector<std::pair<double, double>>{{2, 1}, {4, 2}, {1, 0.5}, {1, 1}, {1.999, 1}, {0.5, 5}}) {
        bool numeric_rejected = false, symbolic_rejected = false;
        try {
            (void)forward_numeric(v, {s, u});
        } catch (const DivergenceError&) {
            numeric_rejected = true;
        }
        try {
            (void)growth_bound_below(v, s / u);
        } catch (const DivergenceError&) {
            symbolic_rejected = true;
        }
        if (!numeric_rejected || !symbolic_rejected) o.fail(fmt("accepted at s/u = %g", s / u));
    }
    double worst = 0.0;
    for (double u : {1.0, 2.0, 0.5}) {
        const double s = 2.01 * u;
        const double want = u / (s - 2 * u);  // 1/(p - 2)
        const double e = std::max(rel_err(forward_numeric(v, {s, u}), want),
                                  rel_err(table_transform(v)(TransformVars{s, u}), want));
        worst = std::max(worst, e);
        if (e >= kExistenceRel) o.fail(fmt("s/u = 2.01, u=%g: rel err %.2e", u, e));
    }
    if (o.pass) o.detail = "s/u <= 2 rejected; s/u = 2.01 max rel err " + fmt("%.2e", worst);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
        {"golden transform values", golden_values},
        {"duality with the Laplace transform", duality},
        {"homogeneity", homogeneity},
        {"operational rules", operational_rules},
        {"Newton cooling", example_newton},
        {"heat equation", example_heat},
        {"fractional porous medium", example_pme},
        {"round trip", round_trip},
        {"existence gate", existence_gate},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome r;
        try {
            r = check();
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = std::string("threw: ") + e.what();
        }
        std::printf("%s  %-38s %s\n", r.pass ? "PASS" : "FAIL", name, r.detail.c_str());
        std::fflush(stdout);
        failed += !r.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
