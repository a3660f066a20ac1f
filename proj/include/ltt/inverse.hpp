#pragma once

#include "ltt/expr.hpp"
#include "ltt/numerics.hpp"
#include "ltt/opcalc.hpp"

#include <functional>
#include <span>
#include <string_view>

namespace ltt {

enum class InversionMethod { partial_fractions, talbot, stehfest, hyperbolic };

/// Parses "partial_fractions", "talbot", "stehfest" or "hyperbolic".
InversionMethod parse_inversion_method(std::string_view name);
std::string_view to_string(InversionMethod m);

struct InversionConfig {
    InversionMethod method = InversionMethod::hyperbolic;
    /// Node count: Talbot nodes, Stehfest terms; ignored by the adaptive
    /// hyperbolic contour.
    int M = 32;
    /// Multiplies the contour's distance to the right of the abscissa.
    double contour_scale = 1.0;

    /// Throws std::invalid_argument: M >= 8 for talbot, M even and <= 18 for
    /// stehfest, contour_scale > 0.
    void validate() const;
};

/// Image as a function of p = s/u, with the data contour methods need.
struct ImageFunction {
    std::function<Complex(Complex)> eval;
    /// Every singularity has real part <= abscissa.
    double abscissa = 0.0;
    /// Largest |Im| of a singularity (0 if unknown or none).
    double max_imag = 0.0;

    static ImageFunction from_rational(const RationalTransform& V);
};

/// Time-domain terms of a strictly proper rational image by partial fractions.
/// Throws ImproperRationalError otherwise.
ExponentialPolynomial inverse_terms(const RationalTransform& V);

/// Closed-form inverse: real poles give e^{at} terms, conjugate pairs give
/// e^{at}(c1 cos bt + c2 sin bt), repeated poles give t^k factors.
Expression invert_symbolic(const RationalTransform& V);

/// v(t) from an image by a numerical Bromwich contour. Throws
/// std::invalid_argument for t <= 0, DomainError when the image is not finite
/// on the contour and ConvergenceError if the adaptive contour does not settle
/// or the fixed Talbot contour (radius 2M/(5t)) cannot enclose V.max_imag.
double invert_numeric(const ImageFunction& V, double t, const InversionConfig& cfg = {});

/// Same for a rational image; the partial_fractions method evaluates the
/// closed-form inverse.
double invert_numeric(const RationalTransform& V, double t, const InversionConfig& cfg = {});

/// v(t) from the two-variable surface V(s, u) at fixed u. The Bromwich
/// integral (1/2 pi i) int (1/u) e^{s t/u} V(s,u) ds becomes the
/// one-variable integral in p = s/u.
double invert_surface(const std::function<Complex(Complex s, double u)>& V, double u, double abscissa,
                      double max_imag, double t, const InversionConfig& cfg = {});

/// max over the grid of |inverse(table_transform(v))(t) - v(t)| / (1 + |v(t)|).
double roundtrip_check(const Expression& v, std::span<const double> grid,
                       InversionMethod method = InversionMethod::partial_fractions);

}  // namespace ltt
