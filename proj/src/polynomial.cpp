#include "ltt/errors.hpp"
#include "ltt/numerics.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace ltt {

Polynomial::Polynomial(std::initializer_list<double> ascending) : c_(ascending) { trim(); }

Polynomial::Polynomial(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

Polynomial Polynomial::monomial(std::size_t degree, double coeff) {
    std::vector<double> c(degree + 1, 0.0);
    c[degree] = coeff;
    return Polynomial(std::move(c));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Polynomial::operator()(double p) const {
    double r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * p + *it;
    return r;
}

Complex Polynomial::operator()(Complex p) const {
    Complex r = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * p + *it;
    return r;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double shift) const {
    // Repeated synthetic division (Taylor shift).
    std::vector<double> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = n - 1; k > i; --k) a[k - 1] += shift * a[k];
    }
    return Polynomial(std::move(a));
}

double Polynomial::norm_inf() const noexcept {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

Polynomial Polynomial::trimmed(double rel) const {
    const double cut = rel * norm_inf();
    std::vector<double> c = c_;
    while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
    return Polynomial(std::move(c));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(double k) {
    for (double& v : c_) v *= k;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
}

std::pair<Polynomial, Polynomial> Polynomial::divide(const Polynomial& a, const Polynomial& b) {
    if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
    if (a.degree() < b.degree()) return {Polynomial{}, a};
    std::vector<double> rem = a.c_;
    const int db = b.degree();
    std::vector<double> q(static_cast<std::size_t>(a.degree() - db + 1), 0.0);
    for (int k = a.degree() - db; k >= 0; --k) {
        const double coef = rem[static_cast<std::size_t>(k + db)] / b.leading();
        q[static_cast<std::size_t>(k)] = coef;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(k + j)] -= coef * b.c_[static_cast<std::size_t>(j)];
        rem[static_cast<std::size_t>(k + db)] = 0.0;
    }
    rem.resize(static_cast<std::size_t>(db));
    return {Polynomial(std::move(q)), Polynomial(std::move(rem))};
}

std::string Polynomial::to_string(char var) const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        if (c_[k] == 0.0) continue;
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", std::abs(c_[k]));
        if (!out.empty()) out += c_[k] < 0 ? " - " : " + ";
        else if (c_[k] < 0) out += "-";
        const bool unit = std::string(buf) == "1";
        if (k == 0 || !unit) out += buf;
        if (k >= 1) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

ComplexCoeffs multiply(const ComplexCoeffs& a, const ComplexCoeffs& b) {
    if (a.empty() || b.empty()) return {};
    ComplexCoeffs r(a.size() + b.size() - 1, Complex{});
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Complex evaluate(const ComplexCoeffs& a, Complex p) {
    Complex r = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = r * p + *it;
    return r;
}

ComplexCoeffs taylor_shift(const ComplexCoeffs& a, Complex r) {
    ComplexCoeffs s = a;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t k = n - 1; k > i; --k) s[k - 1] += r * s[k];
    }
    return s;
}

// ---------------------------------------------------------------------------
// Roots

namespace {

double root_scale(Complex r) { return std::max(1.0, std::abs(r)); }

// Newton iteration on q starting from z; returns the polished point.
Complex polish(const Polynomial& q, Complex z) {
    const Polynomial dq = q.derivative();
    for (int it = 0; it < 50; ++it) {
        const Complex f = q(z);
        const Complex df = dq(z);
        if (std::abs(df) == 0.0) break;
        const Complex step = f / df;
        z -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * root_scale(z)) break;
    }
    return z;
}

// Scale of the terms summed when evaluating q at z; used for zero tests.
double evaluation_scale(const Polynomial& q, Complex z) {
    double s = 0.0;
    double zk = 1.0;
    const double az = std::abs(z);
    for (double c : q.coefficients()) {
        s += std::abs(c) * zk;
        zk *= az;
    }
    return s;
}

}  // namespace

std::vector<Root> find_roots(const Polynomial& poly) {
    const int n = poly.degree();
    if (n < 1) throw std::invalid_argument("find_roots: polynomial of degree < 1");

    std::vector<Complex> eig;
    if (n == 1) {
        eig.push_back(-poly[0] / poly[1]);
    } else {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < n; ++i) companion(i, n - 1) = -poly[static_cast<std::size_t>(i)] / poly.leading();
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
        if (solver.info() != Eigen::Success) throw ConvergenceError("find_roots: eigenvalue iteration failed");
        for (int i = 0; i < n; ++i) eig.push_back(solver.eigenvalues()[i]);
    }

    // Group eigenvalues that are perturbations of one repeated root. A root of
    // multiplicity m is resolved only to about eps^(1/m), so the grouping
    // radius is loose; each group is then validated below.
    constexpr double kCluster = 1e-4;
    std::vector<std::vector<Complex>> groups;
    std::vector<bool> used(eig.size(), false);
    for (std::size_t i = 0; i < eig.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> g{eig[i]};
        used[i] = true;
        for (bool grew = true; grew;) {
            grew = false;
            for (std::size_t j = 0; j < eig.size(); ++j) {
                if (used[j]) continue;
                for (const Complex& m : g) {
                    if (std::abs(eig[j] - m) <= kCluster * root_scale(m)) {
                        g.push_back(eig[j]);
                        used[j] = true;
                        grew = true;
                        break;
                    }
                }
            }
        }
        groups.push_back(std::move(g));
    }

    std::vector<Root> roots;
    for (const auto& g : groups) {
        const int m = static_cast<int>(g.size());
        Complex center{};
        for (const Complex& z : g) center += z;
        center /= static_cast<double>(m);

        // For a genuine m-fold root, the (m-1)-th derivative has a simple root
        // there and all lower derivatives vanish.
        Polynomial q = poly;
        for (int k = 0; k + 1 < m; ++k) q = q.derivative();
        const Complex c = polish(q, center);
        bool genuine = true;
        Polynomial d = poly;
        for (int k = 0; k + 1 < m && genuine; ++k) {
            const double tol = 1e-6 * evaluation_scale(d, c);
            if (std::abs(d(c)) > tol) genuine = false;
            d = d.derivative();
        }
        if (m > 1 && genuine) {
            roots.push_back({c, m});
        } else {
            for (const Complex& z : g) roots.push_back({polish(poly, z), 1});
        }
    }

    // Real roots and exact conjugate pairs.
    for (auto& r : roots) {
        if (std::abs(r.value.imag()) <= 1e-10 * root_scale(r.value)) r.value = {r.value.real(), 0.0};
    }
    std::vector<Root> out;
    std::vector<bool> taken(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (taken[i]) continue;
        taken[i] = true;
        if (roots[i].value.imag() == 0.0) {
            out.push_back(roots[i]);
            continue;
        }
        std::size_t best = roots.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (taken[j] || roots[j].multiplicity != roots[i].multiplicity) continue;
            const double dist = std::abs(roots[j].value - std::conj(roots[i].value));
            if (dist < best_d) {
                best_d = dist;
                best = j;
            }
        }
        if (best == roots.size()) throw ConvergenceError("find_roots: complex root without conjugate partner");
        taken[best] = true;
        Complex upper = roots[i].value.imag() > 0 ? roots[i].value : roots[best].value;
        upper = 0.5 * (upper + std::conj(roots[i].value.imag() > 0 ? roots[best].value : roots[i].value));
        out.push_back({upper, roots[i].multiplicity});
        out.push_back({std::conj(upper), roots[i].multiplicity});
    }

    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t j = i + 1; j < out.size(); ++j) {
            if (std::abs(out[i].value - out[j].value) <= kPoleMergeTolerance * root_scale(out[i].value)) {
                throw ConvergenceError("find_roots: distinct roots closer than the separation tolerance");
            }
        }
    }
    return out;
}

Polynomial from_roots(std::span<const Root> roots, double leading) {
    ComplexCoeffs acc{Complex(leading)};
    for (const auto& r : roots) {
        for (int k = 0; k < r.multiplicity; ++k) acc = multiply(acc, {-r.value, Complex(1.0)});
    }
    std::vector<double> re(acc.size());
    for (std::size_t k = 0; k < acc.size(); ++k) re[k] = acc[k].real();
    return Polynomial(std::move(re));
}

std::vector<PoleTerm> partial_fractions(const Polynomial& num, std::span<const Root> poles, double leading) {
    int total = 0;
    for (const auto& r : poles) total += r.multiplicity;
    if (num.degree() >= total) throw ImproperRationalError("partial_fractions: numerator degree >= denominator degree");

    ComplexCoeffs n_c(num.coefficients().begin(), num.coefficients().end());
    std::vector<PoleTerm> out;
    for (std::size_t i = 0; i < poles.size(); ++i) {
        const Complex r = poles[i].value;
        const int m = poles[i].multiplicity;
        const auto order = static_cast<std::size_t>(m);

        // Taylor coefficients in h = p - r of g(p) = num / (leading * prod_{others}).
        ComplexCoeffs g = taylor_shift(n_c, r);
        g.resize(std::max(g.size(), order), Complex{});
        g.resize(order);
        for (auto& v : g) v /= leading;
        for (std::size_t j = 0; j < poles.size(); ++j) {
            if (j == i) continue;
            // 1/(d + h) = sum_k (-1)^k h^k / d^(k+1)
            const Complex d = r - poles[j].value;
            ComplexCoeffs inv(order);
            Complex dk = 1.0 / d;
            for (std::size_t k = 0; k < order; ++k) {
                inv[k] = (k % 2 == 0 ? 1.0 : -1.0) * dk;
                dk /= d;
            }
            for (int rep = 0; rep < poles[j].multiplicity; ++rep) {
                g = multiply(g, inv);
                g.resize(order);
            }
        }
        for (std::size_t k = 0; k < order; ++k) {
            out.push_back({r, m - static_cast<int>(k), g[k]});
        }
    }
    return out;
}

std::vector<PoleTerm> partial_fractions(const Polynomial& num, const Polynomial& den) {
    if (den.is_zero()) throw DomainError("partial_fractions: zero denominator");
    if (num.degree() >= den.degree()) throw ImproperRationalError("partial_fractions: improper rational");
    if (num.is_zero()) return {};
    const auto roots = find_roots(den);
    return partial_fractions(num, roots, den.leading());
}

}  // namespace ltt
