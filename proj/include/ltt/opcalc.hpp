#pragma once

#include "ltt/expr.hpp"
#include "ltt/numerics.hpp"
#include "ltt/transform.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ltt {

/// Image-domain value N(p)/D(p) with p = s/u.
///
/// The denominator is kept factored as monic prod (p - r)^m over its poles
/// (complex poles in conjugate pairs), so pole structure survives every
/// operational rule without re-running a root finder. All arithmetic returns
/// reduced objects: negligible leading numerator coefficients are dropped and
/// pole/zero pairs that cancel are removed.
class RationalTransform {
public:
    /// The zero image.
    RationalTransform();

    /// num / den; the poles of `den` are found numerically.
    static RationalTransform from_polynomials(const Polynomial& num, const Polynomial& den);
    /// num / prod (p - r)^m
    static RationalTransform from_poles(Polynomial num, std::vector<Root> poles);
    static RationalTransform constant(double c);

    const Polynomial& numerator() const noexcept { return num_; }
    /// Monic denominator polynomial.
    Polynomial denominator() const;
    std::span<const Root> poles() const noexcept { return poles_; }
    int denominator_degree() const noexcept;

    bool is_zero() const noexcept { return num_.is_zero(); }
    /// deg N < deg D (the zero image counts as proper).
    bool is_proper() const noexcept;

    /// Lower bound of the half-line p > bound on which the image is a
    /// convergent transform; -inf for the zero image.
    double convergence_bound() const noexcept { return roc_; }
    /// Largest real part among the poles; -inf without poles.
    double abscissa() const noexcept;
    /// Largest |Im| among the poles.
    double max_imag() const noexcept;

    double operator()(double p) const;
    Complex operator()(Complex p) const;
    /// V(s, u) evaluated as N(s/u)/D(s/u).
    double operator()(const TransformVars& vars) const { return (*this)(vars.ratio()); }

    /// Rendering as a homogeneous function of (s, u): numerator and
    /// denominator each multiplied by u^deg(D), terms ordered by ascending
    /// u-degree, e.g. `3u^2/(s^2+8us+25u^2)`. Coefficients print with 12
    /// significant digits.
    std::string to_su_string() const;
    /// Rendering in p.
    std::string to_p_string() const;

    RationalTransform operator-() const;
    friend RationalTransform operator+(const RationalTransform& a, const RationalTransform& b);
    friend RationalTransform operator-(const RationalTransform& a, const RationalTransform& b);
    friend RationalTransform operator*(const RationalTransform& a, const RationalTransform& b);
    friend RationalTransform operator*(double k, const RationalTransform& a);
    /// Multiplies by p^k (k may be negative).
    RationalTransform times_p_power(int k) const;

    /// V(p + shift), i.e. the image evaluated at (s + shift*u, u).
    RationalTransform shifted(double shift) const;
    /// dV/dp
    RationalTransform derivative() const;

    void set_convergence_bound(double bound) { roc_ = bound; }

private:
    RationalTransform(Polynomial num, std::vector<Root> poles, double roc);
    void reduce();

    Polynomial num_;
    std::vector<Root> poles_;
    double roc_;
};

/// Equality of rational functions by cross-multiplication: N1*D2 - N2*D1
/// must vanish coefficientwise to `rel_tol` of the coefficient scale.
bool equivalent(const RationalTransform& a, const RationalTransform& b, double rel_tol = 1e-12);

/// Finite sum of coeff * t^power * e^{rate t} with complex rate and
/// coefficient. Real functions have conjugate-symmetric terms.
struct ExpTerm {
    Complex rate;
    int power = 0;
    Complex coeff;
};

class ExponentialPolynomial {
public:
    ExponentialPolynomial() = default;
    static ExponentialPolynomial constant(Complex c);
    static ExponentialPolynomial term(Complex rate, int power, Complex coeff);

    std::span<const ExpTerm> terms() const noexcept { return terms_; }

    ExponentialPolynomial& operator+=(const ExponentialPolynomial& o);
    friend ExponentialPolynomial operator+(ExponentialPolynomial a, const ExponentialPolynomial& b) { return a += b; }
    friend ExponentialPolynomial operator*(const ExponentialPolynomial& a, const ExponentialPolynomial& b);
    ExponentialPolynomial scaled(Complex k) const;

    /// Largest real part of a rate; -inf when empty.
    double growth_rate() const noexcept;

    /// Exact image: sum coeff * power! / (p - rate)^(power+1).
    RationalTransform transform() const;
    /// Real expression in t: conjugate pairs become e^{at}(c1 cos bt + c2 sin bt).
    /// Coefficients below drop_rel of the largest magnitude are dropped.
    Expression to_expression(double drop_rel = 1e-12) const;

private:
    void merge();
    std::vector<ExpTerm> terms_;
};

/// Exponential-polynomial form of an expression in t. Throws
/// OutsideGrammarError if the expression depends on x.
ExponentialPolynomial to_exponential_polynomial(const Expression& v);

/// Sum of c t^n e^{at} (cos bt | sin bt) terms: the canonical form shared by
/// every function with the same image, and the form inversion produces.
Expression normal_form(const Expression& v);

// ---------------------------------------------------------------------------
// Transform table and operational rules

/// Closed-form image of any expression in t. Throws OutsideGrammarError for
/// expressions involving x.
RationalTransform table_transform(const Expression& v);

/// V(s - a u, u): the image of e^{a t} v(t).
RationalTransform exp_shift(const RationalTransform& V, double a);

/// (s/u)^n V - sum_{k<n} (s/u)^{n-k-1} v^{(k)}(0): the image of v^{(n)}.
/// Throws std::invalid_argument unless ics.size() == n.
RationalTransform derivative_rule(const RationalTransform& V, std::span<const double> ics, int n);

/// (u/s) V: the image of int_0^t v.
RationalTransform integral_rule(const RationalTransform& V);

/// (-u)^n d^n V / ds^n = (-1)^n d^n V / dp^n: the image of t^n v(t).
/// Throws std::invalid_argument for n < 1.
RationalTransform multiple_shift(const RationalTransform& V, int n);

/// V W: the image of the convolution (v*w)(t).
RationalTransform convolution_transform(const RationalTransform& V, const RationalTransform& W);

/// Order of a fractional derivative with its integer ceiling
/// n = 1 + floor(alpha) for non-integer alpha, n = alpha otherwise.
class FractionalOrder {
public:
    /// Throws std::invalid_argument unless alpha > 0 and finite.
    explicit FractionalOrder(double alpha);
    double alpha() const noexcept { return alpha_; }
    int n() const noexcept { return n_; }

private:
    double alpha_;
    int n_;
};

/// Image of the form sum_j p^{gamma_j} R_j(p) with rational R_j. Terms are
/// normalized so every gamma lies in [0, 1) and gammas are distinct.
class FractionalImage {
public:
    struct Term {
        double exponent;
        RationalTransform factor;
    };

    FractionalImage() = default;
    explicit FractionalImage(const RationalTransform& r);
    static FractionalImage power_term(double exponent, const RationalTransform& factor);

    std::span<const Term> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    FractionalImage& operator+=(const FractionalImage& o);
    friend FractionalImage operator+(FractionalImage a, const FractionalImage& b) { return a += b; }
    friend FractionalImage operator-(FractionalImage a, const FractionalImage& b);
    FractionalImage times_power(double exponent) const;

    double operator()(double p) const;
    Complex operator()(Complex p) const;

    /// The image as a plain rational function when every exponent is an integer.
    std::optional<RationalTransform> as_rational() const;

    std::string to_p_string() const;

private:
    void normalize();
    std::vector<Term> terms_;
};

bool equivalent(const FractionalImage& a, const FractionalImage& b, double rel_tol = 1e-12);

/// Caputo rule: p^alpha V - sum_{k<n} p^{alpha-k-1} v^{(k)}(0+).
/// Throws std::invalid_argument unless ics.size() == order.n().
FractionalImage caputo_rule(const RationalTransform& V, const FractionalOrder& order, std::span<const double> ics);

/// Riemann-Liouville rule: p^alpha V - sum_{k<n} p^{n-k-1} c_k, where c_k is
/// the k-th fractional initial value d^{k-1}/dt^{k-1} I^{n-alpha} v(0+) as
/// indexed in the rule's statement. Throws std::invalid_argument unless
/// frac_ics.size() == order.n().
FractionalImage rl_rule(const RationalTransform& V, const FractionalOrder& order, std::span<const double> frac_ics);

}  // namespace ltt
