#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ltt {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Quadrature

struct QuadratureConfig {
    double abs_tol = 1e-13;
    double rel_tol = 1e-10;
    int max_subdivisions = 20000;

    /// Defaults, with rel_tol taken from LTT_QUAD_TOL when that variable
    /// holds a positive number.
    static QuadratureConfig from_environment();
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;         // estimated error on [0, T] plus the tail bound
    double truncation = 0.0;    // T
    int subdivisions = 0;
};

/// Integrates f over [0, inf) for an integrand bounded by
/// `tail_amplitude * exp(-tail_rate * t)`.
///
/// The range is cut at the T where the analytic tail bound
/// tail_amplitude * exp(-tail_rate * T) / tail_rate drops below abs_tol / 2,
/// and [0, T] is integrated by globally adaptive 21-point Gauss-Kronrod.
/// Throws DivergenceError when tail_rate <= 0 and ConvergenceError when the
/// tolerance is not met within cfg.max_subdivisions panels.
QuadratureResult integrate_halfline(const std::function<double(double)>& f, const QuadratureConfig& cfg,
                                    double tail_rate, double tail_amplitude = 1.0);

/// Adaptive Gauss-Kronrod on a finite interval.
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg);

// ---------------------------------------------------------------------------
// Gamma function

/// Gamma(x) for 0 < x <= 170 via a Lanczos approximation.
/// Throws DomainError for x <= 0 (or NaN) and for x > 170.
double gamma(double x);

// ---------------------------------------------------------------------------
// Polynomials

/// Dense real polynomial, coefficients in ascending degree. Trailing zero
/// coefficients are trimmed, so the leading coefficient is nonzero unless the
/// polynomial is zero (empty coefficient list).
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<double> ascending);
    explicit Polynomial(std::vector<double> ascending);

    static Polynomial monomial(std::size_t degree, double coeff = 1.0);

    /// Degree, or -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    std::span<const double> coefficients() const noexcept { return c_; }
    double operator[](std::size_t k) const noexcept { return k < c_.size() ? c_[k] : 0.0; }
    double leading() const noexcept { return c_.empty() ? 0.0 : c_.back(); }

    double operator()(double p) const;
    Complex operator()(Complex p) const;

    Polynomial derivative() const;
    /// q(p) = this(p + shift)
    Polynomial shifted(double shift) const;
    /// Drops leading coefficients with |c| <= rel * max|c|.
    Polynomial trimmed(double rel) const;
    /// Largest coefficient magnitude.
    double norm_inf() const noexcept;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(double k);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, double k) { return a *= k; }
    friend Polynomial operator*(double k, Polynomial a) { return a *= k; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    /// Quotient and remainder of a / b. Throws std::invalid_argument for b = 0.
    static std::pair<Polynomial, Polynomial> divide(const Polynomial& a, const Polynomial& b);

    std::string to_string(char var = 'p') const;

private:
    void trim();
    std::vector<double> c_;
};

/// Complex polynomial helpers, ascending coefficients.
using ComplexCoeffs = std::vector<Complex>;
ComplexCoeffs multiply(const ComplexCoeffs& a, const ComplexCoeffs& b);
Complex evaluate(const ComplexCoeffs& a, Complex p);
/// Coefficients of a(r + h) as a polynomial in h.
ComplexCoeffs taylor_shift(const ComplexCoeffs& a, Complex r);

/// A root of a polynomial with its multiplicity.
struct Root {
    Complex value;
    int multiplicity = 1;
};

/// Roots of a real polynomial from the eigenvalues of its companion matrix,
/// Newton-polished, with nearly coincident eigenvalues merged into repeated
/// roots. Roots with negligible imaginary part are made real and complex
/// roots are returned in exact conjugate pairs (positive imaginary part
/// first). Throws std::invalid_argument for constant polynomials and
/// ConvergenceError if the eigenvalue iteration fails.
std::vector<Root> find_roots(const Polynomial& poly);

/// Real polynomial with the given roots and leading coefficient.
Polynomial from_roots(std::span<const Root> roots, double leading = 1.0);

/// residue / (p - pole)^order
struct PoleTerm {
    Complex pole;
    int order = 1;
    Complex residue;
};

/// Partial-fraction expansion of num / (leading * prod (p - r)^m) over known
/// roots. Requires deg(num) < total multiplicity.
std::vector<PoleTerm> partial_fractions(const Polynomial& num, std::span<const Root> poles, double leading = 1.0);

/// Partial-fraction expansion of num / den. Throws ImproperRationalError if
/// deg(num) >= deg(den) and DomainError for a zero denominator. Distinct
/// poles closer than 1e-10 (relative) are rejected with ConvergenceError.
std::vector<PoleTerm> partial_fractions(const Polynomial& num, const Polynomial& den);

/// Relative tolerance for treating two poles as the same point.
inline constexpr double kPoleMergeTolerance = 1e-10;

}  // namespace ltt
