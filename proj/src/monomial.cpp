#include "ltt/errors.hpp"
#include "ltt/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ltt {
namespace {

constexpr double kPowerTol = 1e-12;

bool same_shape(const Monomial& a, const Monomial& b) {
    return a.x_power == b.x_power && std::abs(a.t_power - b.t_power) <= kPowerTol;
}

bool is_integer(double g) { return std::abs(g - std::round(g)) <= kPowerTol; }

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

MonomialSum MonomialSum::single(Monomial m) {
    MonomialSum s;
    s.terms_.push_back(m);
    s.merge();
    return s;
}

void MonomialSum::merge() {
    std::vector<Monomial> out;
    for (const auto& m : terms_) {
        if (m.t_power < 0.0) throw SolverError("monomial with negative power of t");
        auto it = std::find_if(out.begin(), out.end(), [&](const Monomial& o) { return same_shape(o, m); });
        if (it != out.end())
            it->coeff += m.coeff;
        else
            out.push_back(m);
    }
    std::erase_if(out, [](const Monomial& m) { return m.coeff == 0.0; });
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        if (a.x_power != b.x_power) return a.x_power > b.x_power;
        return a.t_power < b.t_power;
    });
    terms_ = std::move(out);
}

MonomialSum MonomialSum::from_expression(const Expression& e) {
    switch (e.kind()) {
        case Kind::constant:
            return single({e.value(), 0, 0.0});
        case Kind::variable:
            if (e.var() == Var::t) throw SolverError("initial condition must not depend on t");
            return single({1.0, 1, 0.0});
        case Kind::power: {
            const MonomialSum base = from_expression(e.children()[0]);
            MonomialSum acc = single({1.0, 0, 0.0});
            for (unsigned k = 0; k < e.exponent(); ++k) acc = acc * base;
            return acc;
        }
        case Kind::product: {
            MonomialSum acc = single({1.0, 0, 0.0});
            for (const auto& c : e.children()) acc = acc * from_expression(c);
            return acc;
        }
        case Kind::sum: {
            MonomialSum acc;
            for (const auto& c : e.children()) acc = acc + from_expression(c);
            return acc;
        }
        default:
            throw SolverError("term outside the monomial algebra: " + e.to_string());
    }
}

MonomialSum operator+(const MonomialSum& a, const MonomialSum& b) {
    MonomialSum r = a;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.merge();
    return r;
}

MonomialSum operator*(const MonomialSum& a, const MonomialSum& b) {
    MonomialSum r;
    for (const auto& m : a.terms_) {
        for (const auto& n : b.terms_) {
            double c = m.coeff * n.coeff;
            // t^g1/G(g1+1) * t^g2/G(g2+1) = [G(g1+g2+1)/(G(g1+1) G(g2+1))] t^(g1+g2)/G(g1+g2+1)
            if (m.t_power != 0.0 && n.t_power != 0.0)
                c *= gamma(m.t_power + n.t_power + 1.0) / (gamma(m.t_power + 1.0) * gamma(n.t_power + 1.0));
            r.terms_.push_back({c, m.x_power + n.x_power, m.t_power + n.t_power});
        }
    }
    r.merge();
    return r;
}

bool operator==(const MonomialSum& a, const MonomialSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
        if (!same_shape(a.terms_[i], b.terms_[i])) return false;
        const double ca = a.terms_[i].coeff;
        const double cb = b.terms_[i].coeff;
        if (std::abs(ca - cb) > kPowerTol * std::max(std::abs(ca), std::abs(cb))) return false;
    }
    return true;
}

MonomialSum MonomialSum::d_dx() const {
    MonomialSum r;
    for (const auto& m : terms_)
        if (m.x_power > 0) r.terms_.push_back({m.coeff * m.x_power, m.x_power - 1, m.t_power});
    r.merge();
    return r;
}

MonomialSum MonomialSum::fractional_integral(double a) const {
    if (!(a > 0.0)) throw SolverError("fractional integral order must be positive");
    MonomialSum r = *this;
    for (auto& m : r.terms_) m.t_power += a;
    r.merge();
    return r;
}

double MonomialSum::operator()(double x, double t) const {
    if (t < 0.0) throw DomainError("series evaluation requires t >= 0");
    double v = 0.0;
    for (const auto& m : terms_) {
        double term = m.coeff * std::pow(x, static_cast<double>(m.x_power));
        if (m.t_power != 0.0) term *= std::pow(t, m.t_power) / gamma(m.t_power + 1.0);
        v += term;
    }
    return v;
}

bool MonomialSum::has_integer_powers() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Monomial& m) { return is_integer(m.t_power); });
}

Expression MonomialSum::to_expression() const {
    if (!has_integer_powers()) throw SolverError("series term has fractional powers of t");
    std::vector<Expression> parts;
    for (const auto& m : terms_) {
        const auto n = static_cast<unsigned>(std::lround(m.t_power));
        double fact = 1.0;
        for (unsigned j = 2; j <= n; ++j) fact *= j;
        parts.push_back(Expression::constant(m.coeff / fact) *
                        Expression::power(Expression::variable(Var::x), m.x_power) *
                        Expression::power(Expression::variable(Var::t), n));
    }
    return Expression::sum(std::move(parts));
}

std::string MonomialSum::to_string() const {
    if (terms_.empty()) return "0";
    if (has_integer_powers()) return to_expression().to_display_string();
    std::string out;
    for (const auto& m : terms_) {
        std::vector<std::string> factors;
        if (m.x_power == 1) factors.push_back("x");
        if (m.x_power > 1) factors.push_back("x^" + std::to_string(m.x_power));
        std::string t_part;
        if (m.t_power != 0.0) t_part = "t^" + fmt(m.t_power) + "/Gamma(" + fmt(m.t_power + 1.0) + ")";
        if (!t_part.empty()) factors.push_back(t_part);
        const double c = std::abs(m.coeff);
        std::string text;
        if (c != 1.0 || factors.empty()) text = fmt(c);
        for (const auto& f : factors) text += (text.empty() ? "" : "*") + f;
        if (out.empty())
            out = (m.coeff < 0 ? "-" : "") + text;
        else
            out += (m.coeff < 0 ? " - " : " + ") + text;
    }
    return out;
}

FractionalImage time_image(const MonomialSum& m) {
    FractionalImage img;
    for (const auto& term : m.terms()) {
        if (term.x_power != 0) throw SolverError("time_image: term depends on x");
        img += FractionalImage::power_term(-(term.t_power + 1.0), RationalTransform::constant(term.coeff));
    }
    return img;
}

}  // namespace ltt
