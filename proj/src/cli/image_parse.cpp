#include "ltt/cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <utility>

namespace ltt::cli {
namespace {

// Polynomial in s and u: (deg_s, deg_u) -> coefficient.
using Bivariate = std::map<std::pair<int, int>, double>;

Bivariate constant(double c) { return c == 0.0 ? Bivariate{} : Bivariate{{{0, 0}, c}}; }

Bivariate add(const Bivariate& a, const Bivariate& b, double sign) {
    Bivariate r = a;
    for (const auto& [k, c] : b) {
        r[k] += sign * c;
        if (r[k] == 0.0) r.erase(k);
    }
    return r;
}

Bivariate mul(const Bivariate& a, const Bivariate& b) {
    Bivariate r;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) r[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    std::erase_if(r, [](const auto& kv) { return kv.second == 0.0; });
    return r;
}

struct Ratio {
    Bivariate num;
    Bivariate den;
};

Ratio operator+(const Ratio& a, const Ratio& b) {
    return {add(mul(a.num, b.den), mul(b.num, a.den), 1.0), mul(a.den, b.den)};
}
Ratio operator-(const Ratio& a, const Ratio& b) {
    return {add(mul(a.num, b.den), mul(b.num, a.den), -1.0), mul(a.den, b.den)};
}
Ratio operator*(const Ratio& a, const Ratio& b) { return {mul(a.num, b.num), mul(a.den, b.den)}; }

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Ratio parse_all() {
        Ratio r = expr();
        skip();
        if (pos_ != text_.size()) fail("unexpected character");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError("image: " + msg, pos_); }

    void skip() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool starts_factor() {
        const char c = peek();
        return c == '(' || c == 's' || c == 'u' || c == '.' || std::isdigit(static_cast<unsigned char>(c));
    }

    Ratio expr() {
        Ratio r = term();
        while (true) {
            const char c = peek();
            if (c == '+') {
                ++pos_;
                r = r + term();
            } else if (c == '-') {
                ++pos_;
                r = r - term();
            } else {
                return r;
            }
        }
    }

    Ratio term() {
        Ratio r = unary();
        while (true) {
            const char c = peek();
            if (c == '*') {
                ++pos_;
                r = r * unary();
            } else if (c == '/') {
                ++pos_;
                const std::size_t at = pos_;
                Ratio d = unary();
                if (d.num.empty()) throw ParseError("image: division by zero", at);
                r = r * Ratio{d.den, d.num};
            } else if (starts_factor()) {
                r = r * power();  // implicit product, as in 3u^2 or 8us
            } else {
                return r;
            }
        }
    }

    Ratio unary() {
        const char c = peek();
        if (c == '-') {
            ++pos_;
            Ratio r = unary();
            return {add({}, r.num, -1.0), r.den};
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Ratio power() {
        const Ratio base = primary();
        if (peek() != '^') return base;
        ++pos_;
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a non-negative integer exponent");
        const int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
        Ratio r{constant(1.0), constant(1.0)};
        for (int i = 0; i < n; ++i) r = r * base;
        return r;
    }

    Ratio primary() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Ratio r = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return r;
        }
        if (c == 's') {
            ++pos_;
            return {Bivariate{{{1, 0}, 1.0}}, constant(1.0)};
        }
        if (c == 'u') {
            ++pos_;
            return {Bivariate{{{0, 1}, 1.0}}, constant(1.0)};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = text_.data() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("malformed number");
            pos_ += static_cast<std::size_t>(end - begin);
            return {constant(v), constant(1.0)};
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// Total degree if every term has the same one; -1 for the zero polynomial.
int homogeneous_degree(const Bivariate& b, std::string_view what) {
    int deg = -1;
    for (const auto& [k, c] : b) {
        const int d = k.first + k.second;
        if (deg >= 0 && d != deg)
            throw ParseError("image: " + std::string(what) + " is not homogeneous in (s,u)", 0);
        deg = d;
    }
    return deg;
}

Polynomial at_unit_u(const Bivariate& b) {
    std::vector<double> c;
    for (const auto& [k, v] : b) {
        if (c.size() <= static_cast<std::size_t>(k.first)) c.resize(k.first + 1, 0.0);
        c[k.first] += v;
    }
    return Polynomial(c);
}

}  // namespace

RationalTransform parse_image(std::string_view text) {
    const Ratio r = Parser(text).parse_all();
    if (r.den.empty()) throw ParseError("image: zero denominator", 0);
    const int dn = homogeneous_degree(r.num, "numerator");
    const int dd = homogeneous_degree(r.den, "denominator");
    if (r.num.empty()) return RationalTransform{};
    if (dn != dd)
        throw ParseError("image: numerator and denominator degrees differ (" + std::to_string(dn) + " vs " +
                             std::to_string(dd) + "); an image depends on s/u only",
                         0);
    return RationalTransform::from_polynomials(at_unit_u(r.num), at_unit_u(r.den));
}

}  // namespace ltt::cli
