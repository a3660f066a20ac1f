#include "doctest.h"

#include "function_suite.hpp"
#include "ltt/errors.hpp"
#include "ltt/expr.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace ltt;

TEST_CASE("parse builds canonical nodes") {
    const Expression s = parse("sin(3*t)");
    CHECK(s.kind() == Kind::sin);
    CHECK(s.rate() == 3.0);
    CHECK(s.var() == Var::t);

    const Expression heat = parse("10*sin(4*pi*x) - 5*sin(6*pi*x)");
    REQUIRE(heat.kind() == Kind::sum);
    REQUIRE(heat.children().size() == 2);
    for (const auto& c : heat.children()) {
        const auto [coeff, rest] = c.split_coefficient();
        CHECK(rest.kind() == Kind::sin);
        CHECK(rest.var() == Var::x);
        (void)coeff;
    }

    const Expression te = parse("t*exp(2*t)");
    REQUIRE(te.kind() == Kind::product);
    REQUIRE(te.children().size() == 2);
    CHECK(te.children()[0] == Expression::variable(Var::t));
    CHECK(te.children()[1] == Expression::exp(2.0, Var::t));
}

TEST_CASE("parse errors carry offsets") {
    try {
        (void)parse("sin(3*t) + foo");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 11);
    }
    CHECK_THROWS_AS((void)parse("sin(t*t)"), ParseError);
    CHECK_THROWS_AS((void)parse("t^-1"), ParseError);
    CHECK_THROWS_AS((void)parse("(t"), ParseError);
    CHECK_THROWS_AS((void)parse("t)"), ParseError);
    CHECK_THROWS_AS((void)parse(""), ParseError);
}

TEST_CASE("canonical form makes equal trees compare equal") {
    CHECK(parse("t*3*2") == parse("6*t"));
    CHECK(parse("t + 1 + t") == parse("1 + 2*t"));
    CHECK(parse("exp(t)*exp(2*t)") == parse("exp(3*t)"));
    CHECK(parse("(t*t)^2") == parse("t^4"));
    CHECK(parse("t - t").is_zero());
    CHECK(parse("sin(-2*t)") == parse("-sin(2*t)"));
    CHECK(parse("cos(-2*t)") == parse("cos(2*t)"));
}

TEST_CASE("parse of print is the identity on canonical forms") {
    for (const auto& f : suite::kFunctions) {
        const Expression e = parse(f.text);
        CHECK_MESSAGE(parse(e.to_string()) == e, f.text);
    }
    const Expression heat = parse("10*sin(4*pi*x) - 5*sin(6*pi*x) + x^2*t");
    CHECK(parse(heat.to_string()) == heat);
}

TEST_CASE("eval") {
    CHECK(eval(parse("sin(3*t)"), {.t = 0.0}) == 0.0);
    CHECK(eval(parse("x + t"), {.t = 3.0, .x = 2.0}) == 5.0);
    const double expected = 10.0 * std::sin(std::numbers::pi / 2) - 5.0 * std::sin(3 * std::numbers::pi / 4);
    CHECK(eval(parse("10*sin(4*pi*x) - 5*sin(6*pi*x)"), {.x = 0.125}) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(expected == doctest::Approx(6.46447).epsilon(1e-6));
    CHECK_THROWS_AS((void)eval(parse("x + t"), {.t = 1.0}), DomainError);
}

TEST_CASE("differentiate: closed forms") {
    CHECK(approx_equal(differentiate(parse("sin(3*t)"), Var::t), parse("3*cos(3*t)"), 1e-15));
    CHECK(differentiate(parse("x"), Var::x) == Expression::constant(1.0));
    CHECK(approx_equal(differentiate(parse("t*exp(2*t)"), Var::t), parse("exp(2*t) + 2*t*exp(2*t)"), 1e-15));
    CHECK(differentiate(parse("x^3 + t"), Var::t) == Expression::constant(1.0));
}

TEST_CASE("differentiate agrees with central differences") {
    std::mt19937 rng(20240611);
    std::uniform_real_distribution<double> pick(0.0, 5.0);
    constexpr double h = 1e-5;
    for (const auto& f : suite::kFunctions) {
        const Expression e = parse(f.text);
        const Expression de = differentiate(e, Var::t);
        for (int i = 0; i < 100; ++i) {
            const double t = pick(rng) + 2 * h;
            const double fd = (eval(e, {.t = t + h}) - eval(e, {.t = t - h})) / (2 * h);
            const double exact = eval(de, {.t = t});
            const double scale = std::max({1.0, std::abs(exact), std::abs(eval(e, {.t = t}))});
            CHECK_MESSAGE(std::abs(fd - exact) / scale < 1e-6, f.text << " at t=" << t);
        }
    }
}

TEST_CASE("growth bounds") {
    const GrowthBound s = growth_bound(parse("sin(3*t)"));
    CHECK(s.amplitude == 1.0);
    CHECK(s.rate == 0.0);
    const GrowthBound e = growth_bound(parse("exp(2*t)"));
    CHECK(e.amplitude == 1.0);
    CHECK(e.rate == 2.0);
    const GrowthBound te = growth_bound(parse("t*exp(2*t)"), 0.1);
    CHECK(te.rate == doctest::Approx(2.1).epsilon(1e-15));
    for (int i = 0; i <= 100000; ++i) {
        const double t = 100.0 * i / 100000;
        REQUIRE(t * std::exp(2 * t) <= te.amplitude * std::exp(te.rate * t));
    }
    CHECK_THROWS_AS((void)growth_bound(parse("x*t")), std::invalid_argument);
    CHECK(exponential_order(parse("t^3*exp(-t) + sin(t)")) == 0.0);
    CHECK(exponential_order(parse("5*exp(0.5*t)*sin(4*t) + t")) == 0.5);
}

TEST_CASE("growth bound is sound on the suite") {
    for (const auto& f : suite::kFunctions) {
        const Expression e = parse(f.text);
        const GrowthBound b = growth_bound(e);
        CHECK(b.amplitude > 0.0);
        for (int i = 0; i <= 1000; ++i) {
            const double t = 50.0 * i / 1000;
            const double bound = b.amplitude * std::exp(b.rate * t);
            CHECK_MESSAGE(std::abs(eval(e, {.t = t})) <= bound * (1 + 1e-12), f.text << " at t=" << t);
        }
    }
}
