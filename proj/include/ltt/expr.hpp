#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ltt {

/// Independent variables of the expression language. The enumerator order is
/// the canonical order: spatial before temporal.
enum class Var : std::uint8_t { x, t };

/// Node kinds. The enumerator order is the rank used when sorting the
/// children of sums and products.
enum class Kind : std::uint8_t { constant, variable, power, exp, sin, cos, product, sum };

/// Immutable expression tree over the closure of polynomials, exponentials
/// and sinusoids in `t` and `x`.
///
/// Every Expression is built through the canonicalizing factories below, so a
/// value is always in canonical form:
///   - sums and products are flattened, with children sorted;
///   - numeric factors are folded into a single leading constant;
///   - like terms of a sum are collected, equal bases of a product are merged
///     into integer powers, and exponentials of the same variable combine;
///   - exp/sin/cos always take a linear argument `rate * var`, with the sign of
///     a sinusoid's frequency normalized to be positive.
/// Structural equality (`==`) is therefore a meaningful equality test.
class Expression {
public:
    /// The zero constant.
    Expression();

    static Expression constant(double value);
    static Expression variable(Var v);
    /// exp(rate * v)
    static Expression exp(double rate, Var v);
    /// sin(freq * v)
    static Expression sin(double freq, Var v);
    /// cos(freq * v)
    static Expression cos(double freq, Var v);
    static Expression power(const Expression& base, unsigned exponent);
    static Expression sum(std::vector<Expression> terms);
    static Expression product(std::vector<Expression> factors);

    Kind kind() const noexcept;
    /// Constant value; only meaningful for Kind::constant.
    double value() const noexcept;
    /// Variable of a variable/exp/sin/cos node.
    Var var() const noexcept;
    /// Argument coefficient of an exp/sin/cos node.
    double rate() const noexcept;
    /// Exponent of a power node.
    unsigned exponent() const noexcept;
    /// Children of sum/product nodes; the single base of a power node.
    std::span<const Expression> children() const noexcept;

    bool is_constant() const noexcept { return kind() == Kind::constant; }
    bool is_zero() const noexcept { return is_constant() && value() == 0.0; }
    bool depends_on(Var v) const noexcept;

    /// Splits the expression into its numeric coefficient and the remaining
    /// (coefficient-free) part. A constant c yields (c, 1).
    std::pair<double, Expression> split_coefficient() const;

    /// Exact text, round-trippable through `parse`.
    std::string to_string() const;
    /// Human-oriented text with coefficients rounded to `digits` significant
    /// digits.
    std::string to_display_string(int digits = 12) const;

    friend bool operator==(const Expression& a, const Expression& b);
    friend std::strong_ordering operator<=>(const Expression& a, const Expression& b);

private:
    struct Node;
    explicit Expression(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

Expression operator+(const Expression& a, const Expression& b);
Expression operator-(const Expression& a, const Expression& b);
Expression operator*(const Expression& a, const Expression& b);
Expression operator-(const Expression& a);

/// Structural comparison allowing numeric leaves to differ by `rel_tol`
/// (relative to the larger magnitude, absolute below 1).
bool approx_equal(const Expression& a, const Expression& b, double rel_tol);

/// Values of the free variables. Unset variables are unbound.
struct Bindings {
    std::optional<double> t{};
    std::optional<double> x{};
};

/// Parses the expression grammar
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' uint)?
///   base   := number | 'pi' | 't' | 'x' | '(' expr ')' | ('exp'|'sin'|'cos') '(' expr ')'
/// Function arguments must reduce to `c*t` or `c*x` (or a constant).
/// Throws ParseError with the byte offset of the problem.
Expression parse(std::string_view text);

/// Evaluates the tree. Throws DomainError on an unbound variable.
double eval(const Expression& e, const Bindings& at);

/// Exact symbolic derivative, canonicalized.
Expression differentiate(const Expression& e, Var v);

/// |v(t)| <= amplitude * exp(rate * t) for every t >= 0.
struct GrowthBound {
    double amplitude = 1.0;
    double rate = 0.0;
};

/// Structural exponential-order bound for an expression in `t`. Polynomial
/// factors are absorbed into the rate with slack `poly_slack`, each t^n
/// contributing `poly_slack` to the rate and (n/(e*slack))^n to the amplitude.
/// Throws std::invalid_argument if `e` depends on `x` or `poly_slack <= 0`.
GrowthBound growth_bound(const Expression& e, double poly_slack = 0.1);

/// Infimum of the rates achievable by `growth_bound` as the slack goes to
/// zero: the largest real exponential rate present. -inf for the zero
/// function.
double exponential_order(const Expression& e);

}  // namespace ltt
