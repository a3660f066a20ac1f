#include "ltt/errors.hpp"
#include "ltt/numerics.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ltt {
namespace {

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double gamma(double x) {
    if (!(x > 0.0)) throw DomainError("gamma: argument must be positive, got " + std::to_string(x));
    if (x > 170.0) throw DomainError("gamma: argument " + std::to_string(x) + " overflows double precision");

    if (x == std::floor(x)) {  // exact factorial
        double f = 1.0;
        for (double k = 2.0; k < x; k += 1.0) f *= k;
        return f;
    }

    // The series is most accurate for x >= 1; step down with Gamma(x) = Gamma(x+1)/x.
    if (x < 1.0) return gamma(x + 1.0) / x;

    const double z = x - 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + kLanczosG + 0.5;
    // t^(z+1/2) split in two halves so large arguments do not overflow.
    const double half_pow = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half_pow * (std::exp(-t) * half_pow) * a;
}

}  // namespace ltt
