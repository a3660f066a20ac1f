#include "ltt/errors.hpp"
#include "ltt/opcalc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace ltt {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Leading numerator coefficients below this fraction of the largest one are
// cancellation residue.
constexpr double kTrimRel = 1e-13;
// |N(r)| below this fraction of sum |n_k||r|^k counts as a zero of N.
constexpr double kZeroRel = 1e-10;

bool same_pole(Complex a, Complex b) {
    return std::abs(a - b) <= kPoleMergeTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

int find_pole(const std::vector<Root>& poles, Complex r) {
    for (std::size_t i = 0; i < poles.size(); ++i)
        if (same_pole(poles[i].value, r)) return static_cast<int>(i);
    return -1;
}

void add_pole(std::vector<Root>& poles, Complex r, int m) {
    const int i = find_pole(poles, r);
    if (i >= 0)
        poles[static_cast<std::size_t>(i)].multiplicity += m;
    else
        poles.push_back({r, m});
}

double abs_scale(const Polynomial& q, Complex z) {
    double s = 0.0;
    double zk = 1.0;
    const double az = std::abs(z);
    for (double c : q.coefficients()) {
        s += std::abs(c) * zk;
        zk *= az;
    }
    return s;
}

// Extra factors needed to raise `have` to the multiplicities in `target`.
Polynomial complement(const std::vector<Root>& target, const std::vector<Root>& have) {
    std::vector<Root> extra;
    for (const auto& r : target) {
        const int i = find_pole(have, r.value);
        const int m = r.multiplicity - (i >= 0 ? have[static_cast<std::size_t>(i)].multiplicity : 0);
        if (m > 0) extra.push_back({r.value, m});
    }
    return from_roots(extra);
}

std::string format_coeff(double c) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", c);
    return buf;
}

// sum c_k s^k u^(total-k), ascending u-degree; returns the text and term count.
std::pair<std::string, int> homogeneous(const Polynomial& q, int total) {
    std::string out;
    int count = 0;
    for (int k = q.degree(); k >= 0; --k) {
        const double c = q[static_cast<std::size_t>(k)];
        if (c == 0.0) continue;
        const int j = total - k;
        std::string mono;
        if (j == 1) mono += "u";
        if (j > 1) mono += "u^" + std::to_string(j);
        if (k == 1) mono += "s";
        if (k > 1) mono += "s^" + std::to_string(k);
        std::string coeff = format_coeff(std::abs(c));
        if (coeff == "1" && !mono.empty()) coeff.clear();
        if (count == 0) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? "-" : "+";
        }
        out += coeff + mono;
        ++count;
    }
    if (count == 0) out = "0";
    return {out, count};
}

}  // namespace

RationalTransform::RationalTransform() : roc_(kNegInf) {}

RationalTransform::RationalTransform(Polynomial num, std::vector<Root> poles, double roc)
    : num_(std::move(num)), poles_(std::move(poles)), roc_(roc) {
    reduce();
}

RationalTransform RationalTransform::from_polynomials(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DomainError("rational transform: zero denominator");
    const double lead = den.leading();
    if (den.degree() == 0) return RationalTransform(num * (1.0 / lead), {}, kNegInf);
    auto roots = find_roots(den);
    return from_poles(num * (1.0 / lead), std::move(roots));
}

RationalTransform RationalTransform::from_poles(Polynomial num, std::vector<Root> poles) {
    std::vector<Root> merged;
    for (const auto& r : poles) {
        if (r.multiplicity < 1) throw std::invalid_argument("rational transform: pole multiplicity must be positive");
        add_pole(merged, r.value, r.multiplicity);
    }
    double roc = kNegInf;
    for (const auto& r : merged) roc = std::max(roc, r.value.real());
    return RationalTransform(std::move(num), std::move(merged), roc);
}

RationalTransform RationalTransform::constant(double c) { return RationalTransform(Polynomial{c}, {}, kNegInf); }

void RationalTransform::reduce() {
    num_ = num_.trimmed(kTrimRel);
    if (num_.is_zero()) {
        poles_.clear();
        roc_ = kNegInf;
        return;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < poles_.size(); ++i) {
            const Complex r = poles_[i].value;
            if (r.imag() < 0.0) continue;  // handled with its partner
            if (num_.degree() < 1) break;
            if (std::abs(num_(r)) > kZeroRel * abs_scale(num_, r)) continue;
            if (r.imag() == 0.0) {
                num_ = Polynomial::divide(num_, Polynomial{-r.real(), 1.0}).first;
                --poles_[i].multiplicity;
            } else {
                const int j = find_pole(poles_, std::conj(r));
                if (j < 0 || num_.degree() < 2) continue;
                const Polynomial quad{std::norm(r), -2.0 * r.real(), 1.0};
                num_ = Polynomial::divide(num_, quad).first;
                --poles_[i].multiplicity;
                --poles_[static_cast<std::size_t>(j)].multiplicity;
            }
            changed = true;
            break;
        }
        std::erase_if(poles_, [](const Root& r) { return r.multiplicity <= 0; });
    }
}

Polynomial RationalTransform::denominator() const { return from_roots(poles_); }

int RationalTransform::denominator_degree() const noexcept {
    int d = 0;
    for (const auto& r : poles_) d += r.multiplicity;
    return d;
}

bool RationalTransform::is_proper() const noexcept { return is_zero() || num_.degree() < denominator_degree(); }

double RationalTransform::abscissa() const noexcept {
    double a = kNegInf;
    for (const auto& r : poles_) a = std::max(a, r.value.real());
    return a;
}

double RationalTransform::max_imag() const noexcept {
    double b = 0.0;
    for (const auto& r : poles_) b = std::max(b, std::abs(r.value.imag()));
    return b;
}

Complex RationalTransform::operator()(Complex p) const {
    Complex den{1.0};
    for (const auto& r : poles_) den *= std::pow(p - r.value, r.multiplicity);
    if (den == Complex{}) throw DomainError("rational transform: evaluated at a pole");
    return num_(p) / den;
}

double RationalTransform::operator()(double p) const { return (*this)(Complex{p}).real(); }

std::string RationalTransform::to_su_string() const {
    if (is_zero()) return "0";
    const int d = denominator_degree();
    const int total = std::max(d, num_.degree());
    auto [n_text, n_terms] = homogeneous(num_, total);
    if (d == 0 && total == 0) return n_text;
    auto [d_text, d_terms] = homogeneous(denominator(), total);
    if (d_text == "1") return n_text;
    std::string out = n_terms > 1 ? "(" + n_text + ")" : n_text;
    out += "/";
    out += d_terms > 1 ? "(" + d_text + ")" : d_text;
    return out;
}

std::string RationalTransform::to_p_string() const {
    if (is_zero()) return "0";
    if (poles_.empty()) return num_.to_string('p');
    return "(" + num_.to_string('p') + ")/(" + denominator().to_string('p') + ")";
}

RationalTransform RationalTransform::operator-() const { return RationalTransform(num_ * -1.0, poles_, roc_); }

RationalTransform operator+(const RationalTransform& a, const RationalTransform& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    std::vector<Root> merged = a.poles_;
    for (const auto& r : b.poles_) {
        const int i = find_pole(merged, r.value);
        if (i >= 0) {
            auto& m = merged[static_cast<std::size_t>(i)].multiplicity;
            m = std::max(m, r.multiplicity);
        } else {
            merged.push_back(r);
        }
    }
    Polynomial num = a.num_ * complement(merged, a.poles_) + b.num_ * complement(merged, b.poles_);
    return RationalTransform(std::move(num), std::move(merged), std::max(a.roc_, b.roc_));
}

RationalTransform operator-(const RationalTransform& a, const RationalTransform& b) { return a + (-b); }

RationalTransform operator*(const RationalTransform& a, const RationalTransform& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Root> poles = a.poles_;
    for (const auto& r : b.poles_) add_pole(poles, r.value, r.multiplicity);
    return RationalTransform(a.num_ * b.num_, std::move(poles), std::max(a.roc_, b.roc_));
}

RationalTransform operator*(double k, const RationalTransform& a) {
    if (k == 0.0) return {};
    return RationalTransform(a.num_ * k, a.poles_, a.roc_);
}

RationalTransform RationalTransform::times_p_power(int k) const {
    if (is_zero() || k == 0) return *this;
    if (k > 0) return RationalTransform(num_ * Polynomial::monomial(static_cast<std::size_t>(k)), poles_, roc_);
    std::vector<Root> poles = poles_;
    add_pole(poles, Complex{0.0}, -k);
    return RationalTransform(num_, std::move(poles), std::max(roc_, 0.0));
}

RationalTransform RationalTransform::shifted(double shift) const {
    if (is_zero()) return *this;
    std::vector<Root> poles = poles_;
    for (auto& r : poles) r.value -= shift;
    return RationalTransform(num_.shifted(shift), std::move(poles), roc_ - shift);
}

RationalTransform RationalTransform::derivative() const {
    if (is_zero()) return *this;
    // V = N / prod (p - r)^m;  V' = (N' L - N sum m_r L/(p - r)) / (L prod (p - r)^m)
    // with L = prod (p - r) over distinct poles.
    ComplexCoeffs sum{Complex{}};
    for (std::size_t i = 0; i < poles_.size(); ++i) {
        ComplexCoeffs li{Complex{1.0}};
        for (std::size_t j = 0; j < poles_.size(); ++j)
            if (j != i) li = multiply(li, ComplexCoeffs{-poles_[j].value, Complex{1.0}});
        if (sum.size() < li.size()) sum.resize(li.size());
        for (std::size_t k = 0; k < li.size(); ++k) sum[k] += static_cast<double>(poles_[i].multiplicity) * li[k];
    }
    std::vector<double> sum_re(sum.size());
    for (std::size_t k = 0; k < sum.size(); ++k) sum_re[k] = sum[k].real();
    std::vector<Root> simple;
    for (const auto& r : poles_) simple.push_back({r.value, 1});
    Polynomial num = num_.derivative() * from_roots(simple) - num_ * Polynomial(sum_re);
    std::vector<Root> poles = poles_;
    for (auto& r : poles) ++r.multiplicity;
    return RationalTransform(std::move(num), std::move(poles), roc_);
}

bool equivalent(const RationalTransform& a, const RationalTransform& b, double rel_tol) {
    const Polynomial da = a.denominator();
    const Polynomial db = b.denominator();
    const Polynomial l = a.numerator() * db;
    const Polynomial r = b.numerator() * da;
    const double scale = std::max({l.norm_inf(), r.norm_inf(), std::numeric_limits<double>::min()});
    return (l - r).norm_inf() <= rel_tol * scale;
}

}  // namespace ltt
