#include "ltt/errors.hpp"
#include "ltt/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace ltt {
namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse_all() {
        skip_space();
        if (at_end()) throw ParseError("expected expression", pos_);
        Expression e = parse_expr();
        skip_space();
        if (!at_end()) throw ParseError(std::string("unexpected character '") + text_[pos_] + "'", pos_);
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            skip_space();
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    Expression parse_expr() {
        std::vector<Expression> terms;
        const bool negate_first = accept('-');
        terms.push_back(negate_first ? -parse_term() : parse_term());
        for (;;) {
            if (accept('+')) {
                terms.push_back(parse_term());
            } else if (accept('-')) {
                terms.push_back(-parse_term());
            } else {
                break;
            }
        }
        return Expression::sum(std::move(terms));
    }

    Expression parse_term() {
        std::vector<Expression> factors{parse_factor()};
        while (accept('*')) factors.push_back(parse_factor());
        return Expression::product(std::move(factors));
    }

    Expression parse_factor() {
        Expression base = parse_base();
        if (accept('^')) {
            skip_space();
            const std::size_t start = pos_;
            unsigned n = 0;
            auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), n);
            if (ec != std::errc() || ptr == text_.data() + start) {
                throw ParseError("exponent must be a non-negative integer", start);
            }
            pos_ = static_cast<std::size_t>(ptr - text_.data());
            return Expression::power(base, n);
        }
        return base;
    }

    Expression parse_base() {
        skip_space();
        if (at_end()) throw ParseError("unexpected end of input", pos_);
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (c == '(') {
            ++pos_;
            Expression e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Expression parse_number() {
        const std::size_t start = pos_;
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc()) throw ParseError("malformed number", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return Expression::constant(v);
    }

    Expression parse_identifier() {
        const std::size_t start = pos_;
        while (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") return Expression::variable(Var::t);
        if (name == "x") return Expression::variable(Var::x);
        if (name == "pi") return Expression::constant(std::numbers::pi);
        if (name == "exp" || name == "sin" || name == "cos") {
            expect('(');
            skip_space();
            const std::size_t arg_start = pos_;
            Expression arg = parse_expr();
            expect(')');
            return apply_function(name, arg, arg_start);
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    static Expression apply_function(std::string_view name, const Expression& arg, std::size_t arg_start) {
        if (arg.is_constant()) {
            const double a = arg.value();
            if (name == "exp") return Expression::constant(std::exp(a));
            if (name == "sin") return Expression::constant(std::sin(a));
            return Expression::constant(std::cos(a));
        }
        double rate = 0.0;
        Var v = Var::t;
        if (arg.kind() == Kind::variable) {
            rate = 1.0;
            v = arg.var();
        } else if (arg.kind() == Kind::product && arg.children().size() == 2 &&
                   arg.children()[0].is_constant() && arg.children()[1].kind() == Kind::variable) {
            rate = arg.children()[0].value();
            v = arg.children()[1].var();
        } else {
            throw ParseError("argument of " + std::string(name) + " must be linear in t or x", arg_start);
        }
        if (name == "exp") return Expression::exp(rate, v);
        if (name == "sin") return Expression::sin(rate, v);
        return Expression::cos(rate, v);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace ltt
