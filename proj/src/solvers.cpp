#include "ltt/solvers.hpp"

#include "ltt/errors.hpp"
#include "ltt/inverse.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace ltt {
namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

// Image of a first-order problem c v' = -q v + (forcing folded into v0):
// the derivative rule gives Theta[v'] = p V - v0, so V = c v0 / (c p + q).
RationalTransform first_order_image(double c, double q, double v0) {
    const std::array<double, 1> zero{0.0};
    const std::array<double, 1> init{v0};
    // Theta[v'] = A(p) V + B(p): A from a unit image with zero data, B from
    // the zero image with the actual initial value.
    const RationalTransform a = derivative_rule(RationalTransform::constant(1.0), zero, 1);
    const RationalTransform b = derivative_rule(RationalTransform{}, init, 1);
    // c (A V + B) + q V = 0
    const Polynomial den = c * a.numerator() + Polynomial{q};
    const Polynomial num = -c * b.numerator();
    return RationalTransform::from_polynomials(num, den);
}

}  // namespace

void NewtonCoolingParams::validate() const {
    if (!(positive(h) && positive(M) && positive(rho) && positive(Lambda) && positive(c_p) && positive(beta0)))
        throw SolverError("newton_cooling: h, M, rho, Lambda, c_p and beta0 must all be positive");
}

RationalTransform newton_cooling_image(const NewtonCoolingParams& params) {
    params.validate();
    return first_order_image(params.rho * params.Lambda * params.c_p, params.h * params.M, params.beta0);
}

Expression solve_newton_cooling(const NewtonCoolingParams& params) {
    return invert_symbolic(newton_cooling_image(params));
}

void HeatProblem::validate() const {
    if (!positive(k)) throw SolverError("heat_1d: diffusivity k must be positive");
    if (!positive(L)) throw SolverError("heat_1d: length L must be positive");
    for (const auto& m : modes) {
        if (!std::isfinite(m.amplitude) || !std::isfinite(m.frequency) || m.frequency == 0.0)
            throw SolverError("heat_1d: mode amplitude and frequency must be finite, frequency nonzero");
        const double n = m.frequency * L / std::numbers::pi;
        if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, std::abs(n)))
            throw SolverError("heat_1d: sin(" + std::to_string(m.frequency) +
                              " x) does not vanish at x = L; frequency * L must be a multiple of pi");
    }
}

RationalTransform heat_mode_image(double k, const HeatMode& mode) {
    // V = c(p) sin(w x) in p V - v(x,0) = k V_xx gives p c - A = -k w^2 c.
    // The homogeneous solutions in x are excluded by the zero boundary data.
    return first_order_image(1.0, k * mode.frequency * mode.frequency, mode.amplitude);
}

Expression solve_heat_1d(const HeatProblem& prob) {
    prob.validate();
    std::vector<Expression> parts;
    for (const auto& m : prob.modes)
        parts.push_back(invert_symbolic(heat_mode_image(prob.k, m)) * Expression::sin(m.frequency, Var::x));
    return Expression::sum(std::move(parts));
}

MonomialSum he_polynomial(int n, std::span<const MonomialSum> v_terms) {
    if (n < 0 || v_terms.size() < static_cast<std::size_t>(n) + 1)
        throw std::invalid_argument("he_polynomial: need v_0 .. v_n");
    MonomialSum h;
    for (int k = 0; k <= n; ++k)
        h = h + v_terms[static_cast<std::size_t>(k)] * v_terms[static_cast<std::size_t>(n - k)].d_dx();
    return h;
}

SeriesSolution solve_pme_hpm(double alpha, const Expression& initial, int n_terms) {
    if (!(std::isfinite(alpha) && alpha > 0.0 && alpha <= 1.0)) throw SolverError("pme_hpm: alpha must lie in (0, 1]");
    if (n_terms < 1) throw SolverError("pme_hpm: n_terms must be at least 1");
    SeriesSolution sol{FractionalOrder(alpha), {MonomialSum::from_expression(initial)}};
    for (int n = 0; n < n_terms; ++n) {
        // Theta[v_{n+1}] = p^{-alpha} Theta[d/dx H_n]; t^g/G(g+1) <-> p^{-(g+1)}
        // turns this into a shift of every power of t by alpha.
        const MonomialSum rhs = he_polynomial(n, sol.terms).d_dx();
        sol.terms.push_back(rhs.fractional_integral(alpha));
    }
    return sol;
}

std::string SeriesSolution::to_string() const {
    MonomialSum total;
    for (const auto& t : terms) total = total + t;
    return total.to_string();
}

double evaluate_series(const SeriesSolution& sol, double x, double t) {
    if (t < 0.0) throw DomainError("series evaluation requires t >= 0");
    double v = 0.0;
    for (const auto& term : sol.terms) v += term(x, t);
    return v;
}

}  // namespace ltt
