#include "radgas/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "radgas/error.hpp"

namespace radgas {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b - b_hat
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

OdeResult integrate_dp45(const ScalarRhs& f, double s0, double v0, double s1,
                         const OdeOptions& opt) {
    if (!(s1 > s0)) throw std::invalid_argument("integrate_dp45: need s1 > s0");
    if (!(v0 > 0.0)) throw std::invalid_argument("integrate_dp45: need v0 > 0");

    OdeResult res;
    double s = s0;
    double v = v0;
    double k1 = f(s, v);
    res.nodes.push_back({s, v, k1});

    const double span = s1 - s0;
    double h = opt.h_init;
    if (h <= 0.0) {
        double scale = opt.atol + opt.rtol * std::abs(v);
        h = 0.01 * std::max(scale, std::abs(v)) / std::max(std::abs(k1), 1e-300);
        h = std::min(h, 0.01 * span);
    }
    const double h_floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(s1));

    std::size_t steps = 0;
    while (s < s1) {
        if (++steps > opt.max_steps) throw IntegratorFailure("integrate_dp45: too many steps");
        if (opt.h_rel_max > 0.0) {
            h = std::min(h, opt.h_rel_max * std::max(std::abs(s), opt.h_rel_floor));
        }
        bool last = false;
        if (s + h >= s1) {
            h = s1 - s;
            last = true;
        }
        if (h < h_floor && !last) throw IntegratorFailure("integrate_dp45: step size underflow");

        const double k2 = f(s + c2 * h, v + h * a21 * k1);
        const double k3 = f(s + c3 * h, v + h * (a31 * k1 + a32 * k2));
        const double k4 = f(s + c4 * h, v + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(s + c5 * h, v + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(s + h, v + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double vn = v + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);

        bool ok = std::isfinite(vn) && vn > 0.0;
        double k7 = 0.0;
        double err = std::numeric_limits<double>::infinity();
        if (ok) {
            k7 = f(s + h, vn);
            ok = std::isfinite(k7);
        }
        if (ok) {
            const double est = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
            const double sc = opt.atol + opt.rtol * std::max(std::abs(v), std::abs(vn));
            err = std::abs(est) / sc;
        }
        if (ok && err <= 1.0) {
            s = last ? s1 : s + h;
            v = vn;
            k1 = k7;
            res.nodes.push_back({s, v, k1});
            const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            ++res.rejected;
            const double fac = ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.25;
            h *= fac;
        }
    }
    return res;
}

double hermite(const OdeNode& a, const OdeNode& b, double s) {
    const double dh = b.s - a.s;
    const double t = (s - a.s) / dh;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * a.v + h10 * dh * a.dv + h01 * b.v + h11 * dh * b.dv;
}

double hermite_derivative(const OdeNode& a, const OdeNode& b, double s) {
    const double dh = b.s - a.s;
    const double t = (s - a.s) / dh;
    const double t2 = t * t;
    const double d00 = 6 * t2 - 6 * t;
    const double d10 = 3 * t2 - 4 * t + 1;
    const double d01 = -6 * t2 + 6 * t;
    const double d11 = 3 * t2 - 2 * t;
    return (d00 * a.v + d01 * b.v) / dh + d10 * a.dv + d11 * b.dv;
}

}  // namespace radgas
