#include "doctest.h"

#include "oracles.hpp"
#include "ltt/errors.hpp"
#include "ltt/inverse.hpp"
#include "ltt/solvers.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace ltt;
using std::numbers::pi;

namespace {

NewtonCoolingParams cooling(double rate, double beta) { return {rate, 2.0, 4.0, 0.5, 1.0, beta}; }

HeatProblem heat_example() { return {2.0, 5.0, {{10.0, 4 * pi}, {-5.0, 6 * pi}}}; }

}  // namespace

TEST_CASE("Newton cooling: closed form") {
    const auto params = cooling(0.5 * 4.0 * 0.5 / 2.0, 100.0);  // h M / (rho Lambda c_p) = 0.5
    CHECK(params.rate() == doctest::Approx(0.5).epsilon(1e-15));
    const Expression v = solve_newton_cooling(params);
    CHECK(approx_equal(v, parse("100*exp(-0.5*t)"), 1e-13));
    CHECK(eval(v, {.t = 1.0}) == doctest::Approx(100 * std::exp(-0.5)).epsilon(1e-13));
    CHECK(eval(v, {.t = 0.0}) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(newton_cooling_image(params).to_su_string() == "100u/(s+0.5u)");
}

TEST_CASE("Newton cooling: residual of the ODE") {
    const NewtonCoolingParams p{12.0, 0.3, 7800.0, 2e-4, 460.0, 373.15};
    const Expression v = solve_newton_cooling(p);
    const Expression dv = differentiate(v, Var::t);
    for (int i = 0; i < 100; ++i) {
        const double t = 10.0 * i / 99;
        const double r = -p.h * p.M * eval(v, {.t = t}) - p.rho * p.Lambda * p.c_p * eval(dv, {.t = t});
        CHECK(std::abs(r) < 1e-9 * p.h * p.M * p.beta0);
    }
}

TEST_CASE("Newton cooling: invalid parameters") {
    CHECK_THROWS_AS(solve_newton_cooling({0.0, 1, 1, 1, 1, 1}), SolverError);
    CHECK_THROWS_AS(solve_newton_cooling({1, 1, -1, 1, 1, 1}), SolverError);
}

TEST_CASE("heat equation: closed form") {
    const Expression v = solve_heat_1d(heat_example());
    const Expression expected =
        Expression::constant(10.0) * Expression::exp(-32 * pi * pi, Var::t) * Expression::sin(4 * pi, Var::x) -
        Expression::constant(5.0) * Expression::exp(-72 * pi * pi, Var::t) * Expression::sin(6 * pi, Var::x);
    CHECK(approx_equal(v, expected, 1e-12));
    const double at = eval(v, {.t = 0.01, .x = 0.125});
    const double direct = 10 * std::exp(-0.32 * pi * pi) * std::sin(pi / 2) - 5 * std::exp(-0.72 * pi * pi) * std::sin(0.75 * pi);
    CHECK(at == doctest::Approx(direct).epsilon(1e-12));
    CHECK(eval(v, {.t = 0.0, .x = 0.3}) ==
          doctest::Approx(eval(parse("10*sin(4*pi*x) - 5*sin(6*pi*x)"), {.x = 0.3})).epsilon(1e-13));
}

TEST_CASE("heat equation: PDE residual and boundary values") {
    const auto prob = heat_example();
    const Expression v = solve_heat_1d(prob);
    const Expression vt = differentiate(v, Var::t);
    const Expression vxx = differentiate(differentiate(v, Var::x), Var::x);
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double x = 5.0 * i / 19;
            const double t = 0.05 * j / 19;
            const double r = eval(vt, {.t = t, .x = x}) - prob.k * eval(vxx, {.t = t, .x = x});
            const double scale = std::abs(eval(vt, {.t = t, .x = x})) + 1.0;
            CHECK(std::abs(r) < 1e-8 * scale);
        }
    }
    for (double t : {0.0, 0.01, 0.1}) {
        CHECK(std::abs(eval(v, {.t = t, .x = 0.0})) == 0.0);
        CHECK(std::abs(eval(v, {.t = t, .x = 5.0})) < 1e-12);
    }
}

TEST_CASE("heat equation agrees with explicit finite differences") {
    const auto prob = heat_example();
    const Expression v = solve_heat_1d(prob);
    std::vector<double> times;
    for (int j = 0; j <= 4; ++j) times.push_back(0.0125 * j);
    const auto fd = oracle::heat_fd(prob.k, prob.L, 0.01, [](double x) {
        return 10 * std::sin(4 * pi * x) - 5 * std::sin(6 * pi * x);
    }, times);
    double worst = 0.0;
    for (std::size_t j = 0; j < times.size(); ++j)
        for (std::size_t i = 0; i < fd.x.size(); i += 25)
            worst = std::max(worst, std::abs(fd.snapshots[j][i] - eval(v, {.t = times[j], .x = fd.x[i]})));
    CHECK(worst < 1e-3);
}

TEST_CASE("heat equation: boundary data must vanish") {
    HeatProblem bad{2.0, 5.0, {{1.0, 1.0}}};
    CHECK_THROWS_AS(solve_heat_1d(bad), SolverError);
    HeatProblem neg{-1.0, 5.0, {{1.0, pi}}};
    CHECK_THROWS_AS(solve_heat_1d(neg), SolverError);
}

TEST_CASE("He polynomials") {
    const std::vector<MonomialSum> v{MonomialSum::single({1.0, 1, 0.0}), MonomialSum::single({1.0, 0, 0.5}),
                                     MonomialSum{}};
    CHECK(he_polynomial(0, v) == MonomialSum::single({1.0, 1, 0.0}));
    CHECK(he_polynomial(1, v) == MonomialSum::single({1.0, 0, 0.5}));
    CHECK(he_polynomial(2, v).is_zero());
    CHECK_THROWS_AS(he_polynomial(3, v), std::invalid_argument);
}

TEST_CASE("porous-medium series") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        CAPTURE(alpha);
        const auto sol = solve_pme_hpm(alpha, parse("x"), 3);
        REQUIRE(sol.terms.size() == 4);
        CHECK(sol.terms[0] == MonomialSum::single({1.0, 1, 0.0}));
        CHECK(sol.terms[1] == MonomialSum::single({1.0, 0, alpha}));
        CHECK(sol.terms[2].is_zero());
        CHECK(sol.terms[3].is_zero());
    }
    CHECK(solve_pme_hpm(1.0, parse("x"), 3).to_string() == "x + t");
    CHECK(solve_pme_hpm(0.5, parse("x"), 3).to_string() == "x + t^0.5/Gamma(1.5)");
    const auto zero = solve_pme_hpm(0.5, parse("0"), 4);
    for (const auto& term : zero.terms) CHECK(term.is_zero());
    CHECK_THROWS_AS(solve_pme_hpm(1.5, parse("x"), 3), SolverError);
    CHECK_THROWS_AS(solve_pme_hpm(0.5, parse("x"), 0), SolverError);
    CHECK_THROWS_AS(solve_pme_hpm(0.5, parse("sin(x)"), 2), SolverError);
}

TEST_CASE("porous-medium series: evaluation") {
    const auto half = solve_pme_hpm(0.5, parse("x"), 3);
    CHECK(evaluate_series(half, 1.0, 1.0) == doctest::Approx(1.0 + 2.0 / std::sqrt(pi)).epsilon(1e-13));
    CHECK(evaluate_series(half, 0.7, 0.0) == 0.7);
    CHECK(evaluate_series(solve_pme_hpm(1.0, parse("x"), 3), 2.0, 3.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(evaluate_series(half, 1.0, -0.1), DomainError);
}

TEST_CASE("porous-medium series: first term matches the Caputo bookkeeping") {
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const auto sol = solve_pme_hpm(alpha, parse("x"), 2);
        const MonomialSum rhs = he_polynomial(0, sol.terms).d_dx();
        // Theta[v1] = p^{-alpha} Theta[d/dx H_0]
        const FractionalImage lhs = time_image(sol.terms[1]);
        const FractionalImage expected = time_image(rhs).times_power(-alpha);
        CHECK(equivalent(lhs, expected));
        // Caputo derivative of v1 (v1(0) = 0) reproduces the forcing image.
        const std::vector<double> ic{0.0};
        const FractionalImage d = lhs.times_power(alpha);
        CHECK(equivalent(d, time_image(rhs)));
        if (alpha == 1.0) {
            const auto v1 = table_transform(sol.terms[1].to_expression());
            CHECK(equivalent(caputo_rule(v1, FractionalOrder(alpha), ic), time_image(rhs)));
        }
    }
}

TEST_CASE("porous-medium residual at alpha = 1 vanishes symbolically") {
    const Expression v = solve_pme_hpm(1.0, parse("x"), 3).terms[0].to_expression() +
                         solve_pme_hpm(1.0, parse("x"), 3).terms[1].to_expression();
    CHECK(v == parse("x + t"));
    const Expression residual = differentiate(v, Var::t) - differentiate(v * differentiate(v, Var::x), Var::x);
    CHECK(residual.is_zero());
}
