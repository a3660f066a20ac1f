#include "ltt/inverse.hpp"

#include "ltt/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ltt {
namespace {

using std::numbers::pi;

Complex checked(const ImageFunction& V, Complex z) {
    const Complex f = V.eval(z);
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()))
        throw DomainError("inversion: image is not finite on the contour");
    return f;
}

// Fixed Talbot contour (Abate-Valko) shifted to the abscissa.
double talbot(const ImageFunction& V, double t, int M, double scale) {
    const double shift = std::max(V.abscissa, 0.0);
    const double r = scale * 2.0 * M / (5.0 * t);
    // The contour crosses the shifted imaginary axis at height r pi / 2;
    // singularities above that lie outside it.
    if (V.max_imag >= r * pi / 2)
        throw ConvergenceError("talbot: contour cannot enclose singularities at height " + std::to_string(V.max_imag) +
                               " for t = " + std::to_string(t) + "; use the hyperbolic method or a larger M");
    double sum = 0.5 * std::exp(r * t) * checked(V, Complex{r + shift}).real();
    for (int k = 1; k < M; ++k) {
        const double theta = k * pi / M;
        const double cot = std::cos(theta) / std::sin(theta);
        const Complex z{r * theta * cot, r * theta};
        const double sigma = theta + (theta * cot - 1.0) * cot;
        sum += (std::exp(z * t) * checked(V, z + shift) * Complex{1.0, sigma}).real();
    }
    return std::exp(shift * t) * r / M * sum;
}

double stehfest_weight(int k, int M) {
    const int half = M / 2;
    double s = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
        double term = std::pow(static_cast<double>(j), half);
        term *= std::tgamma(2.0 * j + 1.0);
        term /= std::tgamma(half - j + 1.0) * std::tgamma(j + 1.0) * std::tgamma(j) * std::tgamma(k - j + 1.0) *
                std::tgamma(2.0 * j - k + 1.0);
        s += term;
    }
    return ((k + half) % 2 == 0 ? 1.0 : -1.0) * s;
}

// Gaver-Stehfest on the real axis.
double stehfest(const ImageFunction& V, double t, int M) {
    const double ln2t = std::numbers::ln2 / t;
    double sum = 0.0;
    for (int k = 1; k <= M; ++k) sum += stehfest_weight(k, M) * checked(V, Complex{k * ln2t}).real();
    return ln2t * sum;
}

// Hyperbolic contour z = a + mu (1 + sin(i theta - alpha)), trapezoidal rule
// in theta with node doubling until successive values agree.
double hyperbolic(const ImageFunction& V, double t, double scale) {
    constexpr std::array<double, 16> kAlphas{0.8,   0.6,    0.4,    0.3,  0.2,   0.15,  0.1,   0.07,
                                             0.05,  0.035,  0.025,  0.0175, 0.0125, 0.01, 0.007, 0.005};
    constexpr double kApexFactor = 4.0;
    constexpr double kDecay = 40.0;
    constexpr double kAgree = 1e-11;
    constexpr int kStartNodes = 32;
    constexpr int kMaxNodes = 65536;

    const double a = std::max(V.abscissa, 0.0);
    const double b = V.max_imag;
    const double apex = scale * kApexFactor / t;

    double alpha = kAlphas.back();
    for (double al : kAlphas) {
        const double mu = apex / (1.0 - std::sin(al));
        // Real offset of the contour at the height of the highest singularity.
        const double margin = mu * (1.0 - std::sin(al) * std::cosh(std::asinh(b / (mu * std::cos(al)))));
        if (margin >= 0.5 * apex) {
            alpha = al;
            break;
        }
    }
    const double mu = apex / (1.0 - std::sin(alpha));
    const double theta_max = std::acosh((1.0 + kDecay / (mu * t)) / std::sin(alpha));

    auto trapezoid = [&](int n) {
        const double h = theta_max / n;
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            const Complex w{-alpha, k * h};  // i theta - alpha
            const Complex z = a + mu * (1.0 + std::sin(w));
            const Complex dz = mu * Complex{0.0, 1.0} * std::cos(w);
            const double term = (std::exp(z * t) * checked(V, z) * dz).imag();
            sum += (k == 0 || k == n) ? 0.5 * term : term;
        }
        return h / pi * sum;
    };

    double prev = trapezoid(kStartNodes);
    for (int n = 2 * kStartNodes; n <= kMaxNodes; n *= 2) {
        const double cur = trapezoid(n);
        if (std::abs(cur - prev) <= kAgree * (1.0 + std::abs(cur))) return cur;
        prev = cur;
    }
    throw ConvergenceError("inversion: hyperbolic contour did not converge at t = " + std::to_string(t));
}

}  // namespace

InversionMethod parse_inversion_method(std::string_view name) {
    if (name == "partial_fractions") return InversionMethod::partial_fractions;
    if (name == "talbot") return InversionMethod::talbot;
    if (name == "stehfest") return InversionMethod::stehfest;
    if (name == "hyperbolic") return InversionMethod::hyperbolic;
    throw std::invalid_argument("unknown inversion method '" + std::string(name) + "'");
}

std::string_view to_string(InversionMethod m) {
    switch (m) {
        case InversionMethod::partial_fractions: return "partial_fractions";
        case InversionMethod::talbot: return "talbot";
        case InversionMethod::stehfest: return "stehfest";
        case InversionMethod::hyperbolic: return "hyperbolic";
    }
    return "?";
}

void InversionConfig::validate() const {
    if (!(contour_scale > 0.0) || !std::isfinite(contour_scale))
        throw std::invalid_argument("inversion: contour_scale must be positive");
    if (method == InversionMethod::talbot && M < 8) throw std::invalid_argument("inversion: talbot needs M >= 8");
    if (method == InversionMethod::stehfest && (M % 2 != 0 || M < 2 || M > 18))
        throw std::invalid_argument("inversion: stehfest needs even M <= 18");
}

ImageFunction ImageFunction::from_rational(const RationalTransform& V) {
    return {[V](Complex p) { return V(p); }, V.abscissa(), V.max_imag()};
}

ExponentialPolynomial inverse_terms(const RationalTransform& V) {
    if (!V.is_proper()) throw ImproperRationalError("inversion: image " + V.to_su_string() + " is not strictly proper");
    ExponentialPolynomial e;
    if (V.is_zero()) return e;
    for (const auto& term : partial_fractions(V.numerator(), V.poles())) {
        // r / (p - a)^k  <->  r t^{k-1} e^{a t} / (k-1)!
        double fact = 1.0;
        for (int j = 2; j < term.order; ++j) fact *= j;
        e += ExponentialPolynomial::term(term.pole, term.order - 1, term.residue / fact);
    }
    return e;
}

Expression invert_symbolic(const RationalTransform& V) { return inverse_terms(V).to_expression(); }

double invert_numeric(const ImageFunction& V, double t, const InversionConfig& cfg) {
    if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("inversion: t must be positive");
    cfg.validate();
    switch (cfg.method) {
        case InversionMethod::talbot: return talbot(V, t, cfg.M, cfg.contour_scale);
        case InversionMethod::stehfest: return stehfest(V, t, cfg.M);
        case InversionMethod::hyperbolic: return hyperbolic(V, t, cfg.contour_scale);
        case InversionMethod::partial_fractions: break;
    }
    throw std::invalid_argument("inversion: partial_fractions needs a rational image");
}

double invert_numeric(const RationalTransform& V, double t, const InversionConfig& cfg) {
    if (cfg.method == InversionMethod::partial_fractions) {
        if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("inversion: t must be positive");
        return eval(invert_symbolic(V), {.t = t});
    }
    return invert_numeric(ImageFunction::from_rational(V), t, cfg);
}

double invert_surface(const std::function<Complex(Complex, double)>& V, double u, double abscissa, double max_imag,
                      double t, const InversionConfig& cfg) {
    if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("inversion: u must be positive");
    ImageFunction f{[&V, u](Complex p) { return V(u * p, u); }, abscissa, max_imag};
    return invert_numeric(f, t, cfg);
}

double roundtrip_check(const Expression& v, std::span<const double> grid, InversionMethod method) {
    const RationalTransform V = table_transform(v);
    InversionConfig cfg;
    cfg.method = method;
    if (method == InversionMethod::stehfest) cfg.M = 16;
    double worst = 0.0;
    for (double t : grid) {
        const double exact = eval(v, {.t = t});
        const double got = invert_numeric(V, t, cfg);
        worst = std::max(worst, std::abs(got - exact) / (1.0 + std::abs(exact)));
    }
    return worst;
}

}  // namespace ltt
