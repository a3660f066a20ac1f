#include "ltt/expr.hpp"

#include "ltt/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace ltt {

struct Expression::Node {
    Kind kind = Kind::constant;
    Var var = Var::t;
    double scalar = 0.0;  // constant value or argument rate
    unsigned exponent = 0;
    std::vector<Expression> children;
};

namespace {

std::strong_ordering compare_doubles(double a, double b) {
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("non-finite ") + what);
}

}  // namespace

Expression::Expression() : Expression(constant(0.0)) {}

Expression::Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expression Expression::constant(double value) {
    require_finite(value, "constant");
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->scalar = value == 0.0 ? 0.0 : value;  // fold -0 into +0
    return Expression(std::move(n));
}

Expression Expression::variable(Var v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->var = v;
    return Expression(std::move(n));
}

Expression Expression::exp(double rate, Var v) {
    require_finite(rate, "exponential rate");
    if (rate == 0.0) return constant(1.0);
    auto n = std::make_shared<Node>();
    n->kind = Kind::exp;
    n->var = v;
    n->scalar = rate;
    return Expression(std::move(n));
}

Expression Expression::sin(double freq, Var v) {
    require_finite(freq, "frequency");
    if (freq == 0.0) return constant(0.0);
    if (freq < 0.0) return product({constant(-1.0), sin(-freq, v)});
    auto n = std::make_shared<Node>();
    n->kind = Kind::sin;
    n->var = v;
    n->scalar = freq;
    return Expression(std::move(n));
}

Expression Expression::cos(double freq, Var v) {
    require_finite(freq, "frequency");
    if (freq == 0.0) return constant(1.0);
    auto n = std::make_shared<Node>();
    n->kind = Kind::cos;
    n->var = v;
    n->scalar = std::abs(freq);
    return Expression(std::move(n));
}

Expression Expression::power(const Expression& base, unsigned exponent) {
    if (exponent == 0) return constant(1.0);
    if (exponent == 1) return base;
    switch (base.kind()) {
    case Kind::constant:
        return constant(std::pow(base.value(), static_cast<double>(exponent)));
    case Kind::power:
        return power(base.children()[0], base.exponent() * exponent);
    case Kind::exp:
        return exp(base.rate() * exponent, base.var());
    case Kind::product: {
        std::vector<Expression> factors;
        factors.reserve(base.children().size());
        for (const auto& f : base.children()) factors.push_back(power(f, exponent));
        return product(std::move(factors));
    }
    default:
        break;
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::power;
    n->exponent = exponent;
    n->children = {base};
    return Expression(std::move(n));
}

namespace {

// c * rest where `rest` is canonical and coefficient-free.
Expression scaled(double c, const Expression& rest) {
    if (c == 1.0) return rest;
    if (rest.is_constant()) return Expression::constant(c * rest.value());
    std::vector<Expression> factors{Expression::constant(c)};
    if (rest.kind() == Kind::product) {
        factors.insert(factors.end(), rest.children().begin(), rest.children().end());
    } else {
        factors.push_back(rest);
    }
    return Expression::product(std::move(factors));
}

}  // namespace

Expression Expression::sum(std::vector<Expression> terms) {
    double constant_part = 0.0;
    std::map<Expression, double> collected;

    std::function<void(const Expression&)> absorb = [&](const Expression& e) {
        if (e.kind() == Kind::sum) {
            for (const auto& c : e.children()) absorb(c);
            return;
        }
        auto [c, rest] = e.split_coefficient();
        if (rest.is_constant()) {
            constant_part += c * rest.value();
        } else {
            collected[rest] += c;
        }
    };
    for (const auto& t : terms) absorb(t);

    std::vector<Expression> out;
    if (constant_part != 0.0) out.push_back(constant(constant_part));
    for (const auto& [rest, c] : collected) {
        if (c != 0.0) out.push_back(scaled(c, rest));
    }
    if (out.empty()) return constant(0.0);
    if (out.size() == 1) return out.front();

    auto n = std::make_shared<Node>();
    n->kind = Kind::sum;
    n->children = std::move(out);
    return Expression(std::move(n));
}

Expression Expression::product(std::vector<Expression> factors) {
    double coefficient = 1.0;
    std::map<Expression, unsigned> bases;
    double rate_x = 0.0;
    double rate_t = 0.0;

    std::function<void(const Expression&)> absorb = [&](const Expression& e) {
        switch (e.kind()) {
        case Kind::constant:
            coefficient *= e.value();
            break;
        case Kind::product:
            for (const auto& c : e.children()) absorb(c);
            break;
        case Kind::exp:
            (e.var() == Var::x ? rate_x : rate_t) += e.rate();
            break;
        case Kind::power:
            bases[e.children()[0]] += e.exponent();
            break;
        default:
            bases[e] += 1;
            break;
        }
    };
    for (const auto& f : factors) absorb(f);

    if (coefficient == 0.0) return constant(0.0);
    require_finite(coefficient, "coefficient");

    std::vector<Expression> out;
    for (const auto& [base, k] : bases) out.push_back(power(base, k));
    if (rate_x != 0.0) out.push_back(exp(rate_x, Var::x));
    if (rate_t != 0.0) out.push_back(exp(rate_t, Var::t));
    std::sort(out.begin(), out.end());

    if (out.empty()) return constant(coefficient);
    if (out.size() == 1 && coefficient == 1.0) return out.front();

    auto n = std::make_shared<Node>();
    n->kind = Kind::product;
    if (coefficient != 1.0) n->children.push_back(constant(coefficient));
    n->children.insert(n->children.end(), out.begin(), out.end());
    return Expression(std::move(n));
}

Kind Expression::kind() const noexcept { return node_->kind; }
double Expression::value() const noexcept { return node_->scalar; }
Var Expression::var() const noexcept { return node_->var; }
double Expression::rate() const noexcept { return node_->scalar; }
unsigned Expression::exponent() const noexcept { return node_->exponent; }
std::span<const Expression> Expression::children() const noexcept { return node_->children; }

bool Expression::depends_on(Var v) const noexcept {
    switch (kind()) {
    case Kind::constant:
        return false;
    case Kind::variable:
    case Kind::exp:
    case Kind::sin:
    case Kind::cos:
        return var() == v;
    default:
        return std::any_of(children().begin(), children().end(),
                           [v](const Expression& c) { return c.depends_on(v); });
    }
}

std::pair<double, Expression> Expression::split_coefficient() const {
    if (is_constant()) return {value(), constant(1.0)};
    if (kind() == Kind::product && children().front().is_constant()) {
        const auto rest = children().subspan(1);
        if (rest.size() == 1) return {children().front().value(), rest.front()};
        auto n = std::make_shared<Node>();
        n->kind = Kind::product;
        n->children.assign(rest.begin(), rest.end());
        return {children().front().value(), Expression(std::move(n))};
    }
    return {1.0, *this};
}

bool operator==(const Expression& a, const Expression& b) {
    return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Expression& a, const Expression& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
    case Kind::constant:
        return compare_doubles(a.value(), b.value());
    case Kind::variable:
        return a.var() <=> b.var();
    case Kind::power:
        if (auto c = a.children()[0] <=> b.children()[0]; c != 0) return c;
        return a.exponent() <=> b.exponent();
    case Kind::exp:
    case Kind::sin:
    case Kind::cos:
        if (auto c = a.var() <=> b.var(); c != 0) return c;
        return compare_doubles(a.rate(), b.rate());
    case Kind::product:
    case Kind::sum:
        return std::lexicographical_compare_three_way(a.children().begin(), a.children().end(),
                                                      b.children().begin(), b.children().end());
    }
    return std::strong_ordering::equal;
}

Expression operator+(const Expression& a, const Expression& b) { return Expression::sum({a, b}); }
Expression operator-(const Expression& a, const Expression& b) { return Expression::sum({a, -b}); }
Expression operator*(const Expression& a, const Expression& b) { return Expression::product({a, b}); }
Expression operator-(const Expression& a) { return Expression::product({Expression::constant(-1.0), a}); }

namespace {

bool close(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

bool approx_equal(const Expression& a, const Expression& b, double rel_tol) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Kind::constant:
        return close(a.value(), b.value(), rel_tol);
    case Kind::variable:
        return a.var() == b.var();
    case Kind::power:
        return a.exponent() == b.exponent() && approx_equal(a.children()[0], b.children()[0], rel_tol);
    case Kind::exp:
    case Kind::sin:
    case Kind::cos:
        return a.var() == b.var() && close(a.rate(), b.rate(), rel_tol);
    case Kind::product:
    case Kind::sum: {
        if (a.children().size() != b.children().size()) return false;
        for (std::size_t i = 0; i < a.children().size(); ++i) {
            if (!approx_equal(a.children()[i], b.children()[i], rel_tol)) return false;
        }
        return true;
    }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

using NumberFormat = std::function<std::string(double)>;

std::string exact_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

NumberFormat display_number(int digits) {
    return [digits](double v) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
        std::string s(buf);
        if (s == "-0") s = "0";
        return s;
    };
}

const char* var_name(Var v) { return v == Var::t ? "t" : "x"; }

std::string linear_argument(double rate, Var v, const NumberFormat& num) {
    std::string r = num(rate);
    if (r == "1") return var_name(v);
    if (r == "-1") return std::string("-") + var_name(v);
    return r + "*" + var_name(v);
}

std::string print(const Expression& e, const NumberFormat& num);

std::string print_product_body(std::span<const Expression> factors, const NumberFormat& num) {
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        const auto& f = factors[i];
        if (f.kind() == Kind::sum) {
            out += "(" + print(f, num) + ")";
        } else {
            out += print(f, num);
        }
    }
    return out;
}

// Prints c*rest with a known coefficient.
std::string print_scaled(double c, const Expression& rest, const NumberFormat& num) {
    if (rest.is_constant()) return num(c * rest.value());
    std::span<const Expression> factors =
        rest.kind() == Kind::product ? rest.children() : std::span<const Expression>(&rest, 1);
    std::string body = print_product_body(factors, num);
    std::string coef = num(c);
    if (coef == "1") return body;
    if (coef == "-1") return "-" + body;
    return coef + "*" + body;
}

std::string print(const Expression& e, const NumberFormat& num) {
    switch (e.kind()) {
    case Kind::constant:
        return num(e.value());
    case Kind::variable:
        return var_name(e.var());
    case Kind::exp:
        return "exp(" + linear_argument(e.rate(), e.var(), num) + ")";
    case Kind::sin:
        return "sin(" + linear_argument(e.rate(), e.var(), num) + ")";
    case Kind::cos:
        return "cos(" + linear_argument(e.rate(), e.var(), num) + ")";
    case Kind::power: {
        const auto& base = e.children()[0];
        std::string b = print(base, num);
        if (base.kind() == Kind::sum) b = "(" + b + ")";
        return b + "^" + std::to_string(e.exponent());
    }
    case Kind::product: {
        auto [c, rest] = e.split_coefficient();
        return print_scaled(c, rest, num);
    }
    case Kind::sum: {
        std::string out;
        bool first = true;
        for (const auto& term : e.children()) {
            auto [c, rest] = term.split_coefficient();
            if (first) {
                out += print_scaled(c, rest, num);
                first = false;
            } else if (c < 0.0) {
                out += " - " + print_scaled(-c, rest, num);
            } else {
                out += " + " + print_scaled(c, rest, num);
            }
        }
        return out;
    }
    }
    return {};
}

}  // namespace

std::string Expression::to_string() const { return print(*this, exact_number); }

std::string Expression::to_display_string(int digits) const { return print(*this, display_number(digits)); }

// ---------------------------------------------------------------------------
// Evaluation and calculus

double eval(const Expression& e, const Bindings& at) {
    auto bound = [&](Var v) {
        const auto& slot = v == Var::t ? at.t : at.x;
        if (!slot) throw DomainError(std::string("unbound variable '") + var_name(v) + "'");
        return *slot;
    };
    switch (e.kind()) {
    case Kind::constant:
        return e.value();
    case Kind::variable:
        return bound(e.var());
    case Kind::exp:
        return std::exp(e.rate() * bound(e.var()));
    case Kind::sin:
        return std::sin(e.rate() * bound(e.var()));
    case Kind::cos:
        return std::cos(e.rate() * bound(e.var()));
    case Kind::power:
        return std::pow(eval(e.children()[0], at), static_cast<int>(e.exponent()));
    case Kind::product: {
        double r = 1.0;
        for (const auto& c : e.children()) r *= eval(c, at);
        return r;
    }
    case Kind::sum: {
        double r = 0.0;
        for (const auto& c : e.children()) r += eval(c, at);
        return r;
    }
    }
    return 0.0;
}

Expression differentiate(const Expression& e, Var v) {
    using E = Expression;
    if (!e.depends_on(v)) return E::constant(0.0);
    switch (e.kind()) {
    case Kind::constant:
        return E::constant(0.0);
    case Kind::variable:
        return E::constant(1.0);
    case Kind::exp:
        return E::constant(e.rate()) * e;
    case Kind::sin:
        return E::constant(e.rate()) * E::cos(e.rate(), e.var());
    case Kind::cos:
        return E::constant(-e.rate()) * E::sin(e.rate(), e.var());
    case Kind::power: {
        const auto& base = e.children()[0];
        return E::product({E::constant(static_cast<double>(e.exponent())),
                           E::power(base, e.exponent() - 1), differentiate(base, v)});
    }
    case Kind::product: {
        const auto factors = e.children();
        std::vector<E> terms;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (!factors[i].depends_on(v)) continue;
            std::vector<E> parts(factors.begin(), factors.end());
            parts[i] = differentiate(factors[i], v);
            terms.push_back(E::product(std::move(parts)));
        }
        return E::sum(std::move(terms));
    }
    case Kind::sum: {
        std::vector<E> terms;
        for (const auto& c : e.children()) terms.push_back(differentiate(c, v));
        return E::sum(std::move(terms));
    }
    }
    return E::constant(0.0);
}

namespace {

GrowthBound bound_of(const Expression& e, double slack) {
    const double inv_e_slack = 1.0 / (std::numbers::e * slack);
    switch (e.kind()) {
    case Kind::constant:
        return {std::abs(e.value()), 0.0};
    case Kind::variable:
        return {inv_e_slack, slack};
    case Kind::exp:
        return {1.0, e.rate()};
    case Kind::sin:
    case Kind::cos:
        return {1.0, 0.0};
    case Kind::power: {
        const auto& base = e.children()[0];
        const double n = e.exponent();
        if (base.kind() == Kind::variable) {
            // max_t t^n e^{-slack t} = (n / (e slack))^n
            return {std::pow(n * inv_e_slack, n), slack};
        }
        auto b = bound_of(base, slack);
        return {std::pow(b.amplitude, n), n * b.rate};
    }
    case Kind::product: {
        GrowthBound r{1.0, 0.0};
        for (const auto& c : e.children()) {
            auto b = bound_of(c, slack);
            r.amplitude *= b.amplitude;
            r.rate += b.rate;
        }
        return r;
    }
    case Kind::sum: {
        GrowthBound r{0.0, -std::numeric_limits<double>::infinity()};
        for (const auto& c : e.children()) {
            auto b = bound_of(c, slack);
            r.amplitude += b.amplitude;
            r.rate = std::max(r.rate, b.rate);
        }
        return r;
    }
    }
    return {};
}

}  // namespace

GrowthBound growth_bound(const Expression& e, double poly_slack) {
    if (!(poly_slack > 0.0)) throw std::invalid_argument("growth_bound: slack must be positive");
    if (e.depends_on(Var::x)) throw std::invalid_argument("growth_bound: expression depends on x");
    if (e.is_zero()) return {1.0, 0.0};
    return bound_of(e, poly_slack);
}

double exponential_order(const Expression& e) {
    switch (e.kind()) {
    case Kind::constant:
        return e.value() == 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
    case Kind::variable:
    case Kind::sin:
    case Kind::cos:
        return 0.0;
    case Kind::exp:
        return e.rate();
    case Kind::power:
        return e.exponent() * exponential_order(e.children()[0]);
    case Kind::product: {
        double r = 0.0;
        for (const auto& c : e.children()) r += exponential_order(c);
        return r;
    }
    case Kind::sum: {
        double r = -std::numeric_limits<double>::infinity();
        for (const auto& c : e.children()) r = std::max(r, exponential_order(c));
        return r;
    }
    }
    return 0.0;
}

}  // namespace ltt
