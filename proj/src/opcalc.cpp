#include "ltt/errors.hpp"
#include "ltt/opcalc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ltt {
namespace {

constexpr double kRateMergeRel = 1e-12;
constexpr double kExponentTol = 1e-12;

bool same_rate(Complex a, Complex b) {
    return std::abs(a - b) <= kRateMergeRel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

ComplexCoeffs linear_power(Complex root, int m) {
    ComplexCoeffs acc{Complex{1.0}};
    for (int k = 0; k < m; ++k) acc = multiply(acc, ComplexCoeffs{-root, Complex{1.0}});
    return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// ExponentialPolynomial

ExponentialPolynomial ExponentialPolynomial::constant(Complex c) { return term(Complex{}, 0, c); }

ExponentialPolynomial ExponentialPolynomial::term(Complex rate, int power, Complex coeff) {
    if (power < 0) throw std::invalid_argument("exponential polynomial: negative power");
    ExponentialPolynomial e;
    if (coeff != Complex{}) e.terms_.push_back({rate, power, coeff});
    return e;
}

void ExponentialPolynomial::merge() {
    std::vector<ExpTerm> out;
    for (const auto& t : terms_) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const ExpTerm& o) { return o.power == t.power && same_rate(o.rate, t.rate); });
        if (it != out.end())
            it->coeff += t.coeff;
        else
            out.push_back(t);
    }
    std::erase_if(out, [](const ExpTerm& t) { return t.coeff == Complex{}; });
    std::sort(out.begin(), out.end(), [](const ExpTerm& a, const ExpTerm& b) {
        if (a.rate.real() != b.rate.real()) return a.rate.real() < b.rate.real();
        if (a.rate.imag() != b.rate.imag()) return a.rate.imag() < b.rate.imag();
        return a.power < b.power;
    });
    terms_ = std::move(out);
}

ExponentialPolynomial& ExponentialPolynomial::operator+=(const ExponentialPolynomial& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    merge();
    return *this;
}

ExponentialPolynomial operator*(const ExponentialPolynomial& a, const ExponentialPolynomial& b) {
    ExponentialPolynomial r;
    for (const auto& x : a.terms_)
        for (const auto& y : b.terms_) r.terms_.push_back({x.rate + y.rate, x.power + y.power, x.coeff * y.coeff});
    r.merge();
    return r;
}

ExponentialPolynomial ExponentialPolynomial::scaled(Complex k) const {
    ExponentialPolynomial r = *this;
    for (auto& t : r.terms_) t.coeff *= k;
    r.merge();
    return r;
}

double ExponentialPolynomial::growth_rate() const noexcept {
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) g = std::max(g, t.rate.real());
    return g;
}

RationalTransform ExponentialPolynomial::transform() const {
    if (terms_.empty()) return {};
    std::vector<Root> poles;
    for (const auto& t : terms_) {
        auto it = std::find_if(poles.begin(), poles.end(), [&](const Root& r) { return same_rate(r.value, t.rate); });
        if (it == poles.end())
            poles.push_back({t.rate, t.power + 1});
        else
            it->multiplicity = std::max(it->multiplicity, t.power + 1);
    }
    // Numerator over the common denominator prod (p - rate)^m.
    ComplexCoeffs num{Complex{}};
    for (const auto& t : terms_) {
        ComplexCoeffs part{t.coeff * factorial(t.power)};
        for (const auto& r : poles) {
            const int m = same_rate(r.value, t.rate) ? r.multiplicity - t.power - 1 : r.multiplicity;
            part = multiply(part, linear_power(r.value, m));
        }
        if (num.size() < part.size()) num.resize(part.size());
        for (std::size_t k = 0; k < part.size(); ++k) num[k] += part[k];
    }
    std::vector<double> re(num.size());
    for (std::size_t k = 0; k < num.size(); ++k) re[k] = num[k].real();
    RationalTransform v = RationalTransform::from_poles(Polynomial(std::move(re)), std::move(poles));
    v.set_convergence_bound(growth_rate());
    return v;
}

Expression ExponentialPolynomial::to_expression(double drop_rel) const {
    double cmax = 0.0;
    for (const auto& t : terms_) cmax = std::max(cmax, std::abs(t.coeff));
    const double floor = drop_rel * cmax;
    const Expression t_var = Expression::variable(Var::t);
    std::vector<Expression> parts;
    for (const auto& term : terms_) {
        const double a = term.rate.real();
        const double b = term.rate.imag();
        const Expression base = Expression::power(t_var, static_cast<unsigned>(term.power)) * Expression::exp(a, Var::t);
        if (std::abs(b) <= kRateMergeRel * std::max(1.0, std::abs(term.rate))) {
            if (std::abs(term.coeff.real()) > floor) parts.push_back(Expression::constant(term.coeff.real()) * base);
        } else if (b > 0.0) {
            // c e^{ibt} + conj(c) e^{-ibt} = 2 Re(c) cos bt - 2 Im(c) sin bt
            const double cc = 2.0 * term.coeff.real();
            const double sc = -2.0 * term.coeff.imag();
            if (std::abs(cc) > 2.0 * floor) parts.push_back(Expression::constant(cc) * base * Expression::cos(b, Var::t));
            if (std::abs(sc) > 2.0 * floor) parts.push_back(Expression::constant(sc) * base * Expression::sin(b, Var::t));
        }
    }
    return Expression::sum(std::move(parts));
}

ExponentialPolynomial to_exponential_polynomial(const Expression& v) {
    using EP = ExponentialPolynomial;
    switch (v.kind()) {
        case Kind::constant:
            return EP::constant(v.value());
        case Kind::variable:
            if (v.var() == Var::x) throw OutsideGrammarError("expression depends on x; only functions of t have images");
            return EP::term(Complex{}, 1, 1.0);
        case Kind::exp:
            if (v.var() == Var::x) throw OutsideGrammarError("expression depends on x; only functions of t have images");
            return EP::term(v.rate(), 0, 1.0);
        case Kind::sin:
        case Kind::cos: {
            if (v.var() == Var::x) throw OutsideGrammarError("expression depends on x; only functions of t have images");
            const Complex w{0.0, v.rate()};
            // sin bt = (e^{ibt} - e^{-ibt}) / 2i,  cos bt = (e^{ibt} + e^{-ibt}) / 2
            if (v.kind() == Kind::sin) return EP::term(w, 0, Complex{0.0, -0.5}) + EP::term(-w, 0, Complex{0.0, 0.5});
            return EP::term(w, 0, 0.5) + EP::term(-w, 0, 0.5);
        }
        case Kind::power: {
            const EP base = to_exponential_polynomial(v.children()[0]);
            EP acc = EP::constant(1.0);
            for (unsigned k = 0; k < v.exponent(); ++k) acc = acc * base;
            return acc;
        }
        case Kind::product: {
            EP acc = EP::constant(1.0);
            for (const auto& c : v.children()) acc = acc * to_exponential_polynomial(c);
            return acc;
        }
        case Kind::sum: {
            EP acc;
            for (const auto& c : v.children()) acc += to_exponential_polynomial(c);
            return acc;
        }
    }
    throw OutsideGrammarError("unsupported expression");
}

Expression normal_form(const Expression& v) { return to_exponential_polynomial(v).to_expression(); }

// ---------------------------------------------------------------------------
// Transform table and rules

RationalTransform table_transform(const Expression& v) { return to_exponential_polynomial(v).transform(); }

RationalTransform exp_shift(const RationalTransform& V, double a) { return V.shifted(-a); }

RationalTransform derivative_rule(const RationalTransform& V, std::span<const double> ics, int n) {
    if (n < 0 || ics.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("derivative rule: need exactly n initial values");
    RationalTransform r = V.times_p_power(n);
    for (int k = 0; k < n; ++k) {
        r = r - RationalTransform::constant(ics[static_cast<std::size_t>(k)]).times_p_power(n - k - 1);
    }
    r.set_convergence_bound(V.convergence_bound());
    return r;
}

RationalTransform integral_rule(const RationalTransform& V) { return V.times_p_power(-1); }

RationalTransform multiple_shift(const RationalTransform& V, int n) {
    if (n < 1) throw std::invalid_argument("multiple shift: n must be at least 1");
    RationalTransform r = V;
    for (int k = 0; k < n; ++k) r = r.derivative();
    return n % 2 == 0 ? r : -r;
}

RationalTransform convolution_transform(const RationalTransform& V, const RationalTransform& W) { return V * W; }

// ---------------------------------------------------------------------------
// Fractional rules

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0)) throw std::invalid_argument("fractional order must be positive");
    const double fl = std::floor(alpha);
    n_ = static_cast<int>(fl == alpha ? fl : fl + 1.0);
}

FractionalImage::FractionalImage(const RationalTransform& r) {
    if (!r.is_zero()) terms_.push_back({0.0, r});
}

FractionalImage FractionalImage::power_term(double exponent, const RationalTransform& factor) {
    if (!std::isfinite(exponent)) throw std::invalid_argument("fractional image: exponent must be finite");
    FractionalImage f;
    if (!factor.is_zero()) f.terms_.push_back({exponent, factor});
    f.normalize();
    return f;
}

void FractionalImage::normalize() {
    std::vector<Term> out;
    for (auto& t : terms_) {
        double k = std::floor(t.exponent);
        double frac = t.exponent - k;
        if (frac > 1.0 - kExponentTol) {
            k += 1.0;
            frac = 0.0;
        }
        if (frac < kExponentTol) frac = 0.0;
        const RationalTransform f = t.factor.times_p_power(static_cast<int>(k));
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Term& o) { return std::abs(o.exponent - frac) <= kExponentTol; });
        if (it != out.end())
            it->factor = it->factor + f;
        else
            out.push_back({frac, f});
    }
    std::erase_if(out, [](const Term& t) { return t.factor.is_zero(); });
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.exponent < b.exponent; });
    terms_ = std::move(out);
}

FractionalImage& FractionalImage::operator+=(const FractionalImage& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
}

FractionalImage operator-(FractionalImage a, const FractionalImage& b) {
    for (const auto& t : b.terms_) a.terms_.push_back({t.exponent, -t.factor});
    a.normalize();
    return a;
}

FractionalImage FractionalImage::times_power(double exponent) const {
    FractionalImage r = *this;
    for (auto& t : r.terms_) t.exponent += exponent;
    r.normalize();
    return r;
}

Complex FractionalImage::operator()(Complex p) const {
    Complex v{};
    for (const auto& t : terms_) v += (t.exponent == 0.0 ? Complex{1.0} : std::pow(p, t.exponent)) * t.factor(p);
    return v;
}

double FractionalImage::operator()(double p) const {
    if (!(p > 0.0)) throw DomainError("fractional image: p must be positive");
    double v = 0.0;
    for (const auto& t : terms_) v += std::pow(p, t.exponent) * t.factor(p);
    return v;
}

std::optional<RationalTransform> FractionalImage::as_rational() const {
    if (terms_.empty()) return RationalTransform{};
    if (terms_.size() == 1 && terms_[0].exponent == 0.0) return terms_[0].factor;
    return std::nullopt;
}

std::string FractionalImage::to_p_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        if (t.exponent != 0.0) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "p^%.12g*", t.exponent);
            out += buf;
        }
        out += "[" + t.factor.to_p_string() + "]";
    }
    return out;
}

bool equivalent(const FractionalImage& a, const FractionalImage& b, double rel_tol) {
    const auto ta = a.terms();
    const auto tb = b.terms();
    if (ta.size() != tb.size()) return false;
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (std::abs(ta[i].exponent - tb[i].exponent) > kExponentTol) return false;
        if (!equivalent(ta[i].factor, tb[i].factor, rel_tol)) return false;
    }
    return true;
}

FractionalImage caputo_rule(const RationalTransform& V, const FractionalOrder& order, std::span<const double> ics) {
    const int n = order.n();
    if (ics.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("Caputo rule: need exactly n initial values");
    // p^alpha (V - sum v_k p^{-k-1})
    RationalTransform inner = V;
    for (int k = 0; k < n; ++k)
        inner = inner - RationalTransform::constant(ics[static_cast<std::size_t>(k)]).times_p_power(-k - 1);
    return FractionalImage::power_term(order.alpha(), inner);
}

FractionalImage rl_rule(const RationalTransform& V, const FractionalOrder& order, std::span<const double> frac_ics) {
    const int n = order.n();
    if (frac_ics.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("Riemann-Liouville rule: need exactly n fractional initial values");
    FractionalImage r = FractionalImage::power_term(order.alpha(), V);
    for (int k = 0; k < n; ++k)
        r = r - FractionalImage(RationalTransform::constant(frac_ics[static_cast<std::size_t>(k)]).times_p_power(n - k - 1));
    return r;
}

}  // namespace ltt
