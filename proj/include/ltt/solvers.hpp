#pragma once

#include "ltt/expr.hpp"
#include "ltt/opcalc.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ltt {

// ---------------------------------------------------------------------------
// Newton cooling: rho Lambda c_p v'(t) = -h M v(t), v(0) = beta0

struct NewtonCoolingParams {
    double h = 0.0;
    double M = 0.0;
    double rho = 0.0;
    double Lambda = 0.0;
    double c_p = 0.0;
    double beta0 = 0.0;

    /// Throws SolverError unless every field is positive and finite.
    void validate() const;
    /// h M / (rho Lambda c_p)
    double rate() const noexcept { return h * M / (rho * Lambda * c_p); }
};

/// Image of the solution, beta0 / (p + rate), from the derivative rule.
RationalTransform newton_cooling_image(const NewtonCoolingParams& params);
/// beta0 e^{-rate t}
Expression solve_newton_cooling(const NewtonCoolingParams& params);

// ---------------------------------------------------------------------------
// Heat equation v_t = k v_xx on [0, L], v(0,t) = v(L,t) = 0,
// v(x,0) = sum A_j sin(w_j x)

struct HeatMode {
    double amplitude = 0.0;
    double frequency = 0.0;
};

struct HeatProblem {
    double k = 0.0;
    double L = 0.0;
    std::vector<HeatMode> modes;

    /// Throws SolverError unless k, L > 0 and every w_j L is a nonzero
    /// integer multiple of pi.
    void validate() const;
};

/// Time image A / (p + k w^2) of one mode's coefficient.
RationalTransform heat_mode_image(double k, const HeatMode& mode);
/// sum A_j e^{-k w_j^2 t} sin(w_j x)
Expression solve_heat_1d(const HeatProblem& prob);

// ---------------------------------------------------------------------------
// Monomial algebra for the fractional porous-medium series

/// coeff * x^x_power * t^t_power / Gamma(t_power + 1)
struct Monomial {
    double coeff = 0.0;
    unsigned x_power = 0;
    double t_power = 0.0;
};

/// Finite sum of monomials, merged and sorted (by x power, then t power).
class MonomialSum {
public:
    MonomialSum() = default;
    static MonomialSum single(Monomial m);
    /// Polynomial in x; throws SolverError for anything else.
    static MonomialSum from_expression(const Expression& e);

    std::span<const Monomial> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    friend MonomialSum operator+(const MonomialSum& a, const MonomialSum& b);
    friend MonomialSum operator*(const MonomialSum& a, const MonomialSum& b);
    friend bool operator==(const MonomialSum& a, const MonomialSum& b);

    MonomialSum d_dx() const;
    /// t^g/Gamma(g+1) -> t^(g+a)/Gamma(g+a+1): the fractional integral of order a.
    MonomialSum fractional_integral(double a) const;

    /// Throws DomainError for t < 0.
    double operator()(double x, double t) const;

    /// Expression in x and t; requires integer t powers.
    bool has_integer_powers() const;
    Expression to_expression() const;
    /// Rendering with Gamma factors, e.g. `x + t^0.5/Gamma(1.5)`.
    std::string to_string() const;

private:
    void merge();
    std::vector<Monomial> terms_;
};

/// Image of the t-dependence, t^g/Gamma(g+1) -> p^{-(g+1)}. Throws SolverError
/// if any term depends on x.
FractionalImage time_image(const MonomialSum& m);

/// H_n = sum_{k=0}^{n} v_k d/dx v_{n-k}. Throws std::invalid_argument when
/// fewer than n + 1 terms are supplied.
MonomialSum he_polynomial(int n, std::span<const MonomialSum> v_terms);

struct SeriesSolution {
    FractionalOrder alpha{1.0};
    std::vector<MonomialSum> terms;

    /// Closed form: `x + t` when every power of t is an integer, otherwise
    /// with Gamma factors.
    std::string to_string() const;
};

/// Homotopy-perturbation series for D_t^alpha v = d/dx (v v_x), v(x,0) =
/// initial, returning v_0 .. v_{n_terms}. Throws SolverError for alpha
/// outside (0, 1], n_terms < 1, or an initial condition outside the
/// polynomial algebra.
SeriesSolution solve_pme_hpm(double alpha, const Expression& initial, int n_terms);

/// Sum of the stored terms at (x, t). Throws DomainError for t < 0.
double evaluate_series(const SeriesSolution& sol, double x, double t);

}  // namespace ltt
