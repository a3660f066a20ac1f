#include "ltt/transform.hpp"

#include "ltt/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>
#include <algorithm>

namespace ltt {

TransformVars::TransformVars(double s, double u) : s_(s), u_(u) {
    if (!(std::isfinite(s) && std::isfinite(u) && s > 0.0 && u > 0.0)) {
        std::ostringstream msg;
        msg << "transform variables must satisfy s > 0, u > 0 (got s=" << s << ", u=" << u << ")";
        throw std::invalid_argument(msg.str());
    }
}

bool existence_check(const GrowthBound& bound, const TransformVars& vars) { return vars.ratio() > bound.rate; }

GrowthBound growth_bound_below(const Expression& v, double abscissa) {
    const double order = exponential_order(v);
    if (!(abscissa > order)) {
        std::ostringstream msg;
        msg << "transform diverges: s/u = " << abscissa << " does not exceed the growth rate " << order;
        throw DivergenceError(msg.str());
    }
    double slack = 0.1;
    GrowthBound b = growth_bound(v, slack);
    // Polynomial factors add multiples of the slack to the rate.
    while (!(b.rate < abscissa)) {
        slack *= 0.5;
        if (slack < 1e-300) throw DivergenceError("transform diverges: no admissible growth bound");
        b = growth_bound(v, slack);
    }
    return b;
}

namespace {

void require_time_only(const Expression& v) {
    if (v.depends_on(Var::x)) throw std::invalid_argument("transform: expression must depend on t only");
}

// m * e^k, so that e^{2t} at large t and the kernel e^{-st} can meet
// without overflow.
struct Scaled {
    double m;
    double k;
};

Scaled eval_scaled(const Expression& e, double t) {
    switch (e.kind()) {
    case Kind::constant:
        return {e.value(), 0.0};
    case Kind::variable:
        return {t, 0.0};
    case Kind::exp:
        return {1.0, e.rate() * t};
    case Kind::sin:
        return {std::sin(e.rate() * t), 0.0};
    case Kind::cos:
        return {std::cos(e.rate() * t), 0.0};
    case Kind::power: {
        const Scaled b = eval_scaled(e.children()[0], t);
        const double n = e.exponent();
        return {std::pow(b.m, n), b.k * n};
    }
    case Kind::product: {
        Scaled r{1.0, 0.0};
        for (const auto& c : e.children()) {
            const Scaled f = eval_scaled(c, t);
            r = {r.m * f.m, r.k + f.k};
        }
        return r;
    }
    case Kind::sum: {
        std::vector<Scaled> parts;
        double top = -HUGE_VAL;
        for (const auto& c : e.children()) {
            parts.push_back(eval_scaled(c, t));
            if (parts.back().m != 0.0) top = std::max(top, parts.back().k);
        }
        if (top == -HUGE_VAL) return {0.0, 0.0};
        double m = 0.0;
        for (const auto& p : parts)
            if (p.m != 0.0) m += p.m * std::exp(p.k - top);
        return {m, top};
    }
    }
    return {0.0, 0.0};
}

// v(t) e^{-c t}
double eval_damped(const Expression& v, double t, double c) {
    const Scaled r = eval_scaled(v, t);
    return r.m == 0.0 ? 0.0 : r.m * std::exp(r.k - c * t);
}

}  // namespace

double forward_numeric(const Expression& v, const TransformVars& vars, const QuadratureConfig& cfg) {
    require_time_only(v);
    const double s = vars.s();
    const double u = vars.u();
    const GrowthBound b = growth_bound_below(v, vars.ratio());
    // |u e^{-s t} v(u t)| <= u C e^{-(s - beta u) t}
    auto integrand = [&](double t) { return u * eval_damped(v, u * t, s / u); };
    return integrate_halfline(integrand, cfg, s - b.rate * u, u * b.amplitude).value;
}

double forward_numeric_unscaled(const Expression& v, const TransformVars& vars, const QuadratureConfig& cfg) {
    require_time_only(v);
    const double p = vars.ratio();
    const GrowthBound b = growth_bound_below(v, p);
    auto integrand = [&](double t) { return eval_damped(v, t, p); };
    return integrate_halfline(integrand, cfg, p - b.rate, b.amplitude).value;
}

double laplace_oracle(const Expression& v, double p, const QuadratureConfig& cfg) {
    require_time_only(v);
    if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("laplace_oracle: p must be positive");
    const GrowthBound b = growth_bound_below(v, p);
    auto integrand = [&](double t) { return eval_damped(v, t, p); };
    return integrate_halfline(integrand, cfg, p - b.rate, b.amplitude).value;
}

}  // namespace ltt
