#include "ltt/errors.hpp"
#include "ltt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

namespace ltt {
namespace {

// 21-point Kronrod abscissae and weights with the embedded 10-point Gauss
// weights (QUADPACK qk21).
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478581, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct Panel {
    double a = 0.0;
    double b = 0.0;
    double value = 0.0;
    double error = 0.0;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod21(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double resg = 0.0;
    double resk = kWgk[10] * fc;
    double resabs = std::abs(resk);
    double fv1[10];
    double fv2[10];
    for (int j = 0; j < 5; ++j) {
        const int jtw = 2 * j + 1;
        const double dx = half * kXgk[jtw];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[jtw] * (f1 + f2);
        resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 5; ++j) {
        const int jtwm1 = 2 * j;
        const double dx = half * kXgk[jtwm1];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        resk += kWgk[jtwm1] * (f1 + f2);
        resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
    }
    const double reskh = 0.5 * resk;
    double resasc = kWgk[10] * std::abs(fc - reskh);
    for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    const double abs_half = std::abs(half);
    resk *= half;
    resg *= half;
    resabs *= abs_half;
    resasc *= abs_half;

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
    if (!std::isfinite(resk)) throw DomainError("quadrature: integrand is not finite");
    return {a, b, resk, err};
}

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, int initial_panels,
                          const QuadratureConfig& cfg, double target_abs) {
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double total_err = 0.0;
    const double width = (b - a) / initial_panels;
    for (int i = 0; i < initial_panels; ++i) {
        const double lo = a + i * width;
        const double hi = i + 1 == initial_panels ? b : lo + width;
        Panel p = gauss_kronrod21(f, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }
    int panels = initial_panels;
    auto tolerance = [&] { return std::max(target_abs, cfg.rel_tol * std::abs(total)); };
    while (total_err > tolerance()) {
        if (panels >= cfg.max_subdivisions) {
            throw ConvergenceError("quadrature: tolerance not met within " + std::to_string(cfg.max_subdivisions) +
                                   " subdivisions (estimated error " + std::to_string(total_err) + ")");
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval can no longer be split in floating point.
            throw ConvergenceError("quadrature: panel width underflow");
        }
        Panel left = gauss_kronrod21(f, worst.a, mid);
        Panel right = gauss_kronrod21(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    // Re-sum in a fixed order so the result does not depend on heap history.
    std::vector<Panel> all;
    all.reserve(heap.size());
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double value = 0.0;
    double err = 0.0;
    for (const auto& p : all) {
        value += p.value;
        err += p.error;
    }
    return {value, err, b, panels};
}

}  // namespace

QuadratureConfig QuadratureConfig::from_environment() {
    QuadratureConfig cfg;
    if (const char* env = std::getenv("LTT_QUAD_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && std::isfinite(v) && v > 0.0) cfg.rel_tol = v;
    }
    return cfg;
}

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    const QuadratureConfig& cfg) {
    if (a == b) return {0.0, 0.0, b, 0};
    return adaptive(f, a, b, 1, cfg, cfg.abs_tol);
}

QuadratureResult integrate_halfline(const std::function<double(double)>& f, const QuadratureConfig& cfg,
                                    double tail_rate, double tail_amplitude) {
    if (!(tail_rate > 0.0)) {
        throw DivergenceError("integral over [0, inf) diverges: integrand does not decay (tail rate " +
                              std::to_string(tail_rate) + ")");
    }
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0) || cfg.max_subdivisions < 1) {
        throw std::invalid_argument("integrate_halfline: invalid quadrature configuration");
    }
    const double amplitude = std::max(tail_amplitude, std::numeric_limits<double>::min());
    // amplitude * exp(-rate T) / rate < abs_tol / 2
    const double ratio = 2.0 * amplitude / (tail_rate * cfg.abs_tol);
    const double T = std::max(std::log(std::max(ratio, 1.0)) / tail_rate, 1.0 / tail_rate);
    const double tail = amplitude * std::exp(-tail_rate * T) / tail_rate;

    // One initial panel per decay length, capped; the adaptive loop refines.
    const int initial = static_cast<int>(std::clamp(std::ceil(T * tail_rate), 1.0, 64.0));
    auto r = adaptive(f, 0.0, T, std::min(initial, cfg.max_subdivisions), cfg, 0.5 * cfg.abs_tol);
    r.error += tail;
    return r;
}

}  // namespace ltt
