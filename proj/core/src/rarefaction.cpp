#include "radgas/rarefaction.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "radgas/error.hpp"

namespace radgas {

double riemann_rarefaction(double u_minus, double u_plus, double x, double t) {
    if (!(u_minus < u_plus)) throw std::invalid_argument("rarefaction needs u_minus < u_plus");
    if (t <= 0.0) return x < 0.0 ? u_minus : u_plus;
    if (x <= u_minus * t) return u_minus;
    if (x >= u_plus * t) return u_plus;
    return x / t;
}

namespace {

constexpr double kAsymptoticZ = 25.0;

// Asymptotic series of sqrt(pi) z e^{z^2} erfc(z) for large z.
double erfc_series(double z) {
    const double w = 1.0 / (2.0 * z * z);
    // 1 - w + 3w^2 - 15w^3 + 105w^4 - 945w^5 + 10395w^6
    double s = 1.0;
    double term = 1.0;
    for (int k = 1; k <= 6; ++k) {
        term *= -(2.0 * k - 1.0) * w;
        s += term;
    }
    return s;
}

}  // namespace

double log_erfc(double z) {
    if (z < kAsymptoticZ) return std::log(std::erfc(z));
    return -z * z - std::log(z * std::sqrt(std::numbers::pi)) + std::log(erfc_series(z));
}

double mills_ratio(double z) {
    if (z < kAsymptoticZ) {
        return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-z * z) / std::erfc(z);
    }
    return 2.0 * z / erfc_series(z);
}

BurgersJet smooth_burgers_jet(double ul, double ur, double x, double t) {
    if (t < 0.0) throw std::invalid_argument("smooth_burgers: t < 0");
    const double db = ur - ul;
    if (t == 0.0) {
        if (x < 0.0) return {ul, 0.0, 0.0, 0.0};
        if (x > 0.0) return {ur, 0.0, 0.0, db};
        return {0.5 * (ul + ur), 0.0, 0.0, 0.5 * db};
    }
    const double st = std::sqrt(t);
    const double a = (x - ul * t) / (2.0 * st);
    const double b = (ur * t - x) / (2.0 * st);
    const double L = 0.5 * db * (x - 0.5 * (ul + ur) * t) + log_erfc(a) - log_erfc(b);
    if (!std::isfinite(L)) throw PrecisionLoss("Hopf-Cole exponent is not finite");

    // r = 1/(1+e^L) and r(1-r) evaluated without overflow.
    const double e = std::exp(-std::abs(L));
    const double r = L > 0.0 ? e / (1.0 + e) : 1.0 / (1.0 + e);
    const double rr = e / ((1.0 + e) * (1.0 + e));
    const double one_minus_2r = std::tanh(0.5 * L);

    const double ma = mills_ratio(a);
    const double mb = mills_ratio(b);
    const double dma = ma * (ma - 2.0 * a);
    const double dmb = mb * (mb - 2.0 * b);
    const double Lx = 0.5 * db - (ma + mb) / (2.0 * st);
    const double Lxx = (dmb - dma) / (4.0 * t);

    const double offset = db * r;
    return {ul + offset, -db * rr * Lx, db * rr * (one_minus_2r * Lx * Lx - Lxx), offset};
}

double smooth_burgers(double ul, double ur, double x, double t, int deriv) {
    if (deriv < 0 || deriv > 4) throw std::invalid_argument("derivative order must be in 0..4");
    if (deriv <= 2 || t == 0.0) {
        BurgersJet j = smooth_burgers_jet(ul, ur, x, t);
        switch (deriv) {
            case 0: return j.u;
            case 1: return j.u_x;
            case 2: return j.u_xx;
            default: return 0.0;
        }
    }
    // Richardson-extrapolated differences of the analytic second derivative.
    // The narrowest feature has width ~sqrt(t).
    const double eta = 0.01 * std::sqrt(t);
    auto uxx = [&](double y) { return smooth_burgers_jet(ul, ur, y, t).u_xx; };
    if (deriv == 3) {
        auto d = [&](double s) { return (uxx(x + s) - uxx(x - s)) / (2.0 * s); };
        return (4.0 * d(0.5 * eta) - d(eta)) / 3.0;
    }
    const double c = uxx(x);
    auto d = [&](double s) { return (uxx(x + s) - 2.0 * c + uxx(x - s)) / (s * s); };
    return (4.0 * d(0.5 * eta) - d(eta)) / 3.0;
}

RarefactionFamily RarefactionFamily::make(double u_minus, double u_plus) {
    if (!(u_minus >= 0.0 && u_minus < u_plus) || !std::isfinite(u_plus)) {
        throw std::invalid_argument("rarefaction family needs 0 <= u_minus < u_plus");
    }
    return {u_minus, u_plus, u_minus == 0.0 ? Case::Case4 : Case::Case5};
}

double smooth_rarefaction(const RarefactionFamily& fam, double x, double t, int deriv) {
    return smooth_burgers(fam.left_state(), fam.right_state(), x, t, deriv);
}

ModifiedWave::Boundary ModifiedWave::boundary(double t) const {
    const BurgersJet j = smooth_burgers_jet(fam_.left_state(), fam_.right_state(), 0.0, t);
    // In Case4 the datum is antisymmetric and u~(0,t) vanishes; the jet
    // returns exactly 0 there.
    const double a = fam_.tag == RarefactionFamily::Case::Case4 ? j.u : j.offset;
    const double a_t = j.u_xx - j.u * j.u_x;
    return {a, -j.u_x, a_t};
}

ModifiedWaveValue ModifiedWave::eval(double x, double t) const {
    if (x < 0.0) throw std::invalid_argument("modified wave lives on x >= 0");
    const Boundary bd = boundary(t);
    const BurgersJet j = smooth_burgers_jet(fam_.left_state(), fam_.right_state(), x, t);
    const double ex = std::exp(-x);
    const double u_hat = bd.a * ex;
    const double q_hat = bd.b * ex;
    // At x = 0 phi equals u_minus by construction; avoid rounding in u~ - u_hat.
    const double phi = x == 0.0 ? fam_.u_minus : j.u - u_hat;
    const double psi = x == 0.0 ? 0.0 : -j.u_x - q_hat;
    return {phi, j.u_x + u_hat, psi, u_hat, q_hat};
}

Residuals ModifiedWave::residuals(double x, double t) const {
    const Boundary bd = boundary(t);
    const double ul = fam_.left_state();
    const double ur = fam_.right_state();
    const BurgersJet j = smooth_burgers_jet(ul, ur, x, t);
    const double ex = std::exp(-x);

    const double u_hat = bd.a * ex;
    const double u_hat_t = bd.a_t * ex;
    const double u_hat_x = -u_hat;
    const double u_hat_xxx = -u_hat;
    const double q_hat = bd.b * ex;
    const double q_hat_x = -q_hat;
    const double q_hat_xx = q_hat;

    const double phi = j.u - u_hat;
    const double phi_x = j.u_x - u_hat_x;
    const double phi_xxx = smooth_burgers(ul, ur, x, t, 3) - u_hat_xxx;

    const double r1 = u_hat_t + phi_x * u_hat + phi * u_hat_x + u_hat * u_hat_x + q_hat_x;
    const double r2 = -phi_xxx - u_hat_xxx - q_hat_xx + u_hat_x + q_hat;
    return {r1, r2};
}

void ModifiedWave::sample(const Grid& grid, double t, std::vector<double>& phi,
                          std::vector<double>& psi) const {
    const Boundary bd = boundary(t);
    const std::size_t n = grid.size();
    phi.resize(n);
    psi.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(i);
        const BurgersJet j = smooth_burgers_jet(fam_.left_state(), fam_.right_state(), x, t);
        const double ex = std::exp(-x);
        phi[i] = j.u - bd.a * ex;
        psi[i] = -j.u_x - bd.b * ex;
    }
    phi[0] = fam_.u_minus;
    psi[0] = 0.0;
}

}  // namespace radgas
