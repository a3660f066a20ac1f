#include "doctest.h"

#include "ltt/errors.hpp"
#include "ltt/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

using namespace ltt;

TEST_CASE("integrate_halfline: closed forms") {
    const QuadratureConfig cfg;
    const auto one = integrate_halfline([](double t) { return std::exp(-t); }, cfg, 1.0);
    CHECK(std::abs(one.value - 1.0) < 1e-10);
    const auto damped = integrate_halfline([](double t) { return std::exp(-2 * t) * std::sin(3 * t); }, cfg, 2.0);
    CHECK(damped.value == doctest::Approx(3.0 / 13.0).epsilon(1e-10));
    CHECK(damped.error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(damped.value)));
    CHECK_THROWS_AS(integrate_halfline([](double t) { return std::exp(t); }, cfg, 0.0), DivergenceError);
    CHECK_THROWS_AS(integrate_halfline([](double t) { return std::exp(t); }, cfg, -1.0), DivergenceError);
}

TEST_CASE("integrate_halfline: truncation point honours the tail bound") {
    const QuadratureConfig cfg;
    const auto r = integrate_halfline([](double t) { return std::exp(-0.5 * t); }, cfg, 0.5, 1.0);
    CHECK(std::exp(-0.5 * r.truncation) / 0.5 < cfg.abs_tol / 2 * (1 + 1e-12));
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-11));
}

TEST_CASE("integrate_halfline: failures") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 2;
    CHECK_THROWS_AS(integrate_halfline([](double t) { return std::exp(-t) * std::sin(40 * t); }, cfg, 1.0),
                    ConvergenceError);
    CHECK_THROWS_AS(integrate_halfline([](double) { return std::nan(""); }, QuadratureConfig{}, 1.0), DomainError);
}

TEST_CASE("QuadratureConfig reads the environment") {
    ::setenv("LTT_QUAD_TOL", "1e-6", 1);
    CHECK(QuadratureConfig::from_environment().rel_tol == 1e-6);
    ::setenv("LTT_QUAD_TOL", "garbage", 1);
    CHECK(QuadratureConfig::from_environment().rel_tol == 1e-10);
    ::unsetenv("LTT_QUAD_TOL");
    CHECK(QuadratureConfig::from_environment().rel_tol == 1e-10);
}

TEST_CASE("gamma") {
    CHECK(ltt::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ltt::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
    CHECK(ltt::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-13));
    CHECK(ltt::gamma(1.5) == doctest::Approx(std::sqrt(std::numbers::pi) / 2).epsilon(1e-13));
    CHECK_THROWS_AS((void)ltt::gamma(0.0), DomainError);
    CHECK_THROWS_AS((void)ltt::gamma(-1.5), DomainError);
    CHECK_THROWS_AS((void)ltt::gamma(171.0), DomainError);
    CHECK(std::isfinite(ltt::gamma(170.0)));
}

TEST_CASE("gamma: recurrence and agreement with std::tgamma") {
    for (int i = 0; i <= 500; ++i) {
        const double x = 0.1 + (50.0 - 0.1) * i / 500;
        CHECK(std::abs(ltt::gamma(x + 1) - x * ltt::gamma(x)) <= 1e-11 * std::abs(ltt::gamma(x + 1)));
    }
    for (int i = 1; i <= 340; ++i) {
        const double x = 0.5 * i;
        CHECK(std::abs(ltt::gamma(x) - std::tgamma(x)) <= 1e-12 * std::tgamma(x));
    }
}

TEST_CASE("Polynomial arithmetic") {
    const Polynomial a{1.0, 2.0};       // 1 + 2p
    const Polynomial b{-1.0, 0.0, 1.0};  // p^2 - 1
    CHECK((a * b) == Polynomial{-1.0, -2.0, 1.0, 2.0});
    CHECK((a + b) == Polynomial{0.0, 2.0, 1.0});
    CHECK((b - b).is_zero());
    CHECK((b - b).degree() == -1);
    CHECK(b.derivative() == Polynomial{0.0, 2.0});
    CHECK(b.shifted(1.0) == Polynomial{0.0, 2.0, 1.0});
    const auto [q, r] = Polynomial::divide(b, Polynomial{-1.0, 1.0});
    CHECK(q == Polynomial{1.0, 1.0});
    CHECK(r.is_zero());
    CHECK_THROWS_AS(Polynomial::divide(b, Polynomial{}), std::invalid_argument);
    CHECK(b(3.0) == 8.0);
}

TEST_CASE("find_roots: simple, repeated and complex") {
    const auto r1 = find_roots(Polynomial{9.0, 0.0, 1.0});
    REQUIRE(r1.size() == 2);
    CHECK(r1[0].value == std::conj(r1[1].value));
    CHECK(std::abs(std::abs(r1[0].value.imag()) - 3.0) < 1e-14);
    CHECK(r1[0].value.real() == 0.0);

    const auto r2 = find_roots(Polynomial{1.0, 2.0, 1.0});  // (p+1)^2
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].multiplicity == 2);
    CHECK(std::abs(r2[0].value + 1.0) < 1e-12);

    const Polynomial cubic = from_roots(std::vector<Root>{{Complex{2.0}, 3}, {Complex{-1.0, 2.0}, 1}, {Complex{-1.0, -2.0}, 1}});
    const auto r3 = find_roots(cubic);
    int total = 0;
    for (const auto& r : r3) total += r.multiplicity;
    CHECK(total == 5);
    CHECK_THROWS_AS(find_roots(Polynomial{3.0}), std::invalid_argument);
}

TEST_CASE("partial_fractions: worked decompositions") {
    const auto a = partial_fractions(Polynomial{1.0}, Polynomial{2.0, 1.0});
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0].pole - Complex{-2.0}) < 1e-14);
    CHECK(a[0].order == 1);
    CHECK(std::abs(a[0].residue - Complex{1.0}) < 1e-14);

    const auto b = partial_fractions(Polynomial{3.0}, Polynomial{9.0, 0.0, 1.0});
    REQUIRE(b.size() == 2);
    for (const auto& term : b) {
        CHECK(term.order == 1);
        // residue at +3i is -i/2, at -3i it is +i/2
        const Complex expected = term.pole.imag() > 0 ? Complex{0.0, -0.5} : Complex{0.0, 0.5};
        CHECK(std::abs(term.residue - expected) < 1e-14);
    }

    const auto c = partial_fractions(Polynomial{1.0}, Polynomial{1.0, 2.0, 1.0});
    REQUIRE(c.size() == 2);
    bool found_double = false;
    for (const auto& term : c) {
        if (term.order == 2) {
            found_double = true;
            CHECK(std::abs(term.residue - Complex{1.0}) < 1e-12);
        } else {
            CHECK(std::abs(term.residue) < 1e-12);
        }
    }
    CHECK(found_double);

    CHECK_THROWS_AS(partial_fractions(Polynomial{1.0, 1.0}, Polynomial{2.0, 1.0}), ImproperRationalError);
    CHECK_THROWS_AS(partial_fractions(Polynomial{1.0}, Polynomial{}), DomainError);
}

TEST_CASE("partial_fractions reconstructs random rationals") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> pt(-4.0, 4.0);
    for (int trial = 0; trial < 40; ++trial) {
        // Denominator with separated roots so the reconstruction is well posed.
        std::vector<Root> roots;
        const int kind = trial % 4;
        roots.push_back({Complex{-1.0 - 0.1 * trial}, 1 + kind % 2});
        roots.push_back({Complex{0.5, 1.0 + 0.05 * trial}, 1});
        roots.push_back({Complex{0.5, -1.0 - 0.05 * trial}, 1});
        if (kind >= 2) roots.push_back({Complex{2.0 + 0.01 * trial}, kind - 1});
        const Polynomial den = from_roots(roots, 1.5);
        std::vector<double> nc(static_cast<std::size_t>(den.degree()));
        for (auto& c : nc) c = coef(rng);
        const Polynomial num(nc);
        const auto terms = partial_fractions(num, den);
        for (int i = 0; i < 100; ++i) {
            const Complex p{pt(rng), pt(rng)};
            Complex sum{};
            for (const auto& term : terms) sum += term.residue / std::pow(p - term.pole, term.order);
            const Complex direct = num(p) / den(p);
            CHECK(std::abs(sum - direct) <= 1e-9 * std::abs(direct) + 1e-14);
        }
    }
}
