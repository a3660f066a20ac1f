#pragma once

#include "ltt/expr.hpp"
#include "ltt/numerics.hpp"

namespace ltt {

/// The pair (s, u) of transform variables; both strictly positive.
class TransformVars {
public:
    /// Throws std::invalid_argument unless s > 0 and u > 0 (both finite).
    TransformVars(double s, double u);

    double s() const noexcept { return s_; }
    double u() const noexcept { return u_; }
    /// p = s/u, the single variable every image actually depends on.
    double ratio() const noexcept { return s_ / u_; }

    TransformVars scaled(double lambda) const { return {lambda * s_, lambda * u_}; }

private:
    double s_;
    double u_;
};

/// True iff s/u > bound.rate: the transform integral is guaranteed to exist.
/// The boundary s/u == rate is rejected.
bool existence_check(const GrowthBound& bound, const TransformVars& vars);

/// Theta[v](s,u) = u * int_0^inf e^{-s t} v(u t) dt, by quadrature.
///
/// Throws std::invalid_argument if v depends on x, and DivergenceError when
/// s/u does not exceed the exponential order of v.
double forward_numeric(const Expression& v, const TransformVars& vars,
                       const QuadratureConfig& cfg = QuadratureConfig::from_environment());

/// Same value through the other form of the definition,
/// int_0^inf e^{-s t/u} v(t) dt.
double forward_numeric_unscaled(const Expression& v, const TransformVars& vars,
                                const QuadratureConfig& cfg = QuadratureConfig::from_environment());

/// Classical Laplace transform int_0^inf e^{-p t} v(t) dt by quadrature.
/// Used as the independent oracle for the duality Theta[v](s,u) = L[v](s/u).
double laplace_oracle(const Expression& v, double p,
                      const QuadratureConfig& cfg = QuadratureConfig::from_environment());

/// Growth bound for v whose rate stays strictly below `abscissa`, shrinking
/// the polynomial slack from the default as needed. Throws DivergenceError
/// when abscissa <= exponential_order(v).
GrowthBound growth_bound_below(const Expression& v, double abscissa);

}  // namespace ltt
