#include "radgas/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "radgas/error.hpp"

namespace radgas {

namespace {

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr int kDegenerateTerms = 10;
constexpr int kNonDegenerateTerms = 12;

}  // namespace

StationaryParams StationaryParams::make(double u_minus, double u_plus) {
    if (!std::isfinite(u_minus) || !std::isfinite(u_plus) || !(u_minus < u_plus) ||
        u_plus > 0.0) {
        throw std::invalid_argument("stationary profile needs u_minus < u_plus <= 0");
    }
    StationaryParams p;
    p.u_minus = u_minus;
    p.u_plus = u_plus;
    p.s0 = 0.5 * (u_minus * u_minus - u_plus * u_plus);
    p.delta = u_plus - u_minus;
    p.tag = u_plus == 0.0 ? Case::Degenerate : Case::NonDegenerate;
    return p;
}

double StationaryParams::lambda0() const {
    if (degenerate()) throw std::logic_error("lambda0 is defined for u_plus < 0 only");
    const double a = std::abs(u_plus);
    return (std::sqrt(1.0 + 4.0 * a * a) - 1.0) / (2.0 * a);
}

double StationaryParams::b() const {
    if (degenerate()) throw std::logic_error("b is defined for u_plus < 0 only");
    const double a = std::abs(u_plus);
    return 1.0 / (2.0 * a * a * a);
}

double StationaryParams::g(double s) const { return 1.0 / std::sqrt(u_plus * u_plus + 2.0 * s); }

ExpansionCoeffs expansion_coeffs(int K) {
    if (K < 1 || K > 30) throw std::invalid_argument("expansion_coeffs: K must be in 1..30");
    using boost::multiprecision::cpp_int;
    std::vector<cpp_int> c(static_cast<std::size_t>(K) + 1);
    c[1] = 1;
    for (int k = 2; k <= K; ++k) {
        cpp_int acc = 0;
        for (int j = 1; j < k; ++j) acc += cpp_int(2 * j + 1) * c[k - j] * c[j];
        c[k] = acc;
    }
    ExpansionCoeffs out;
    out.K = K;
    for (int k = 1; k <= K; ++k) {
        out.c_exact.push_back(c[k].str());
        const double ck = c[k].convert_to<double>();
        out.c.push_back(ck);
        out.a.push_back((k % 2 == 1 ? 1.0 : -1.0) * kSqrt2 * ck);
    }
    return out;
}

double expansion_partial_sum(const ExpansionCoeffs& ec, int k, double s) {
    if (k < 1 || k > ec.K) throw std::invalid_argument("expansion_partial_sum: k out of range");
    double acc = 0.0;
    const double rs = std::sqrt(s);
    double pw = s * rs;
    for (int i = 1; i <= k; ++i) {
        acc += ec.a_at(i) * pw;
        pw *= s;
    }
    return acc;
}

std::vector<double> nondegenerate_series(double u_plus, int n) {
    if (!(u_plus < 0.0)) throw std::invalid_argument("non-degenerate series needs u_plus < 0");
    if (n < 1) throw std::invalid_argument("series length must be positive");
    const double a = std::abs(u_plus);
    // Taylor coefficients of (u_plus^2 + 2s)^{-1/2} = (1/a) (1 + 2s/a^2)^{-1/2}.
    std::vector<double> g(static_cast<std::size_t>(n));
    double coef = 1.0 / a;
    for (int j = 0; j < n; ++j) {
        g[j] = coef;
        coef *= -(2.0 * j + 1.0) / (2.0 * (j + 1.0)) * (2.0 / (a * a));
    }
    const double lam = (std::sqrt(1.0 + 4.0 * a * a) - 1.0) / (2.0 * a);
    // beta[n] for n >= 1; gamma[m] = (m+1) beta[m+1] + g[m] are the
    // coefficients of v' + g.
    std::vector<double> beta(static_cast<std::size_t>(n) + 1, 0.0);
    beta[1] = lam;
    auto gamma = [&](int m) { return (m + 1) * beta[m + 1] + g[m]; };
    for (int N = 2; N <= n; ++N) {
        double rhs = -lam * g[N - 1];
        for (int k = 2; k <= N - 1; ++k) rhs -= beta[k] * gamma(N - k);
        beta[N] = rhs / ((N + 1) * lam + g[0]);
    }
    return std::vector<double>(beta.begin() + 1, beta.end());
}

OdeOptions default_phase_options() {
    OdeOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-18;
    o.h_rel_max = 2e-3;
    o.h_rel_floor = 1e-6;
    return o;
}

double PhaseTrajectory::ode_value(double s) const {
    const auto& n = nodes_;
    if (s <= n.front().s) return n.front().v;
    if (s >= n.back().s) return n.back().v;
    auto it = std::upper_bound(n.begin(), n.end(), s,
                               [](double x, const OdeNode& node) { return x < node.s; });
    const std::size_t j = static_cast<std::size_t>(it - n.begin());
    return hermite(n[j - 1], n[j], s);
}

PhaseTrajectory::Jet PhaseTrajectory::series_jet(double s) const {
    Jet j{0, 0, 0, 0};
    if (params_.degenerate()) {
        for (std::size_t i = 0; i < series_.size(); ++i) {
            const double p = static_cast<double>(i) + 1.5;
            const double pw = std::pow(s, p - 1.0);
            j.v += series_[i] * pw * s;
            j.dv += series_[i] * p * pw;
            j.d2v += series_[i] * p * (p - 1) * pw / s;
            j.d3v += series_[i] * p * (p - 1) * (p - 2) * pw / (s * s);
        }
    } else {
        // Horner-free direct sums; the series is short and s is small.
        for (std::size_t i = 0; i < series_.size(); ++i) {
            const double n = static_cast<double>(i) + 1.0;
            const double b = series_[i];
            j.v += b * std::pow(s, n);
            j.dv += b * n * std::pow(s, n - 1);
            if (n >= 2) j.d2v += b * n * (n - 1) * std::pow(s, n - 2);
            if (n >= 3) j.d3v += b * n * (n - 1) * (n - 2) * std::pow(s, n - 3);
        }
    }
    return j;
}

double PhaseTrajectory::value(double s) const {
    if (is_limit() && s < s_star_) return series_jet(s).v;
    return ode_value(s);
}

PhaseTrajectory::Jet PhaseTrajectory::jet(double s) const {
    if (is_limit() && s < s_star_) return series_jet(s);
    const double v = ode_value(s);
    const double P = params_.u_plus * params_.u_plus + 2.0 * s;
    const double gp = -std::pow(P, -1.5);
    const double gpp = 3.0 * std::pow(P, -2.5);
    const double dv = params_.rhs(s, v);
    const double d2v = 1.0 / v - s * dv / (v * v) - gp;
    const double d3v =
        -2.0 * dv / (v * v) - s * d2v / (v * v) + 2.0 * s * dv * dv / (v * v * v) - gpp;
    return {v, dv, d2v, d3v};
}

std::vector<std::pair<double, double>> PhaseTrajectory::log_samples(std::size_t n,
                                                                    double lo) const {
    if (n < 2) throw std::invalid_argument("need at least two samples");
    if (lo <= 0.0) lo = is_limit() ? 1e-6 * s_max() : s_min_;
    const double hi = s_max();
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    const double r = std::log(hi / lo);
    // Open at the lower end: the anchor itself is excluded.
    for (std::size_t i = 1; i <= n; ++i) {
        const double s = lo * std::exp(r * static_cast<double>(i) / static_cast<double>(n));
        out.emplace_back(s, value(std::min(s, hi)));
    }
    return out;
}

PhaseTrajectory phase_approximant(const StationaryParams& p, long k, const OdeOptions& opt) {
    if (k < 1) throw std::invalid_argument("approximant index must be positive");
    const double kd = static_cast<double>(k);
    const double s_anchor = p.degenerate() ? 1.0 / (kd * kd) : 0.0;
    if (p.degenerate() && !(s_anchor < p.s0)) {
        throw std::invalid_argument("anchor 1/k^2 must lie below s0");
    }
    PhaseTrajectory tr(p);
    tr.k_ = k;
    tr.s_min_ = s_anchor;
    auto f = [&p](double s, double v) { return p.rhs(s, v); };
    OdeResult r = integrate_dp45(f, s_anchor, 1.0 / kd, p.s0, opt);
    tr.nodes_ = std::move(r.nodes);

    // Turning point: the trajectory falls until it meets the nullcline.
    const auto& n = tr.nodes_;
    for (std::size_t j = 0; j + 1 < n.size(); ++j) {
        if (n[j].dv < 0.0 && n[j + 1].dv >= 0.0) {
            double lo = n[j].s, hi = n[j + 1].s;
            for (int it = 0; it < 100 && hi - lo > 1e-16 * hi; ++it) {
                const double mid = 0.5 * (lo + hi);
                (p.rhs(mid, hermite(n[j], n[j + 1], mid)) < 0.0 ? lo : hi) = mid;
            }
            tr.turning_ = 0.5 * (lo + hi);
            break;
        }
    }
    return tr;
}

PhaseTrajectory stationary_limit(const StationaryParams& p, double tol, long k_max,
                                 const OdeOptions& opt) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    PhaseTrajectory out(p);
    out.k_ = 0;
    out.s_min_ = 0.0;

    long k;
    if (p.degenerate()) {
        ExpansionCoeffs ec = expansion_coeffs(kDegenerateTerms);
        out.series_ = ec.a;
        // Largest s where the third-order band width |a_4| s^{9/2} is below tol.
        const double M3 = std::abs(ec.a_at(4));
        out.s_star_ = std::min(std::pow(tol / M3, 2.0 / 9.0), 0.5 * p.s0);
        const long k0 = static_cast<long>(std::floor(1.0 / std::sqrt(p.s0))) + 1;
        k = std::max(k0, static_cast<long>(std::ceil(2.0 / std::sqrt(out.s_star_))));
    } else {
        std::vector<double> beta = nondegenerate_series(p.u_plus, kNonDegenerateTerms + 1);
        const double next = std::abs(beta.back());
        beta.pop_back();
        out.series_ = beta;
        const double lam = p.lambda0();
        // First omitted term small against tol relative to the linear part.
        const double s_series =
            std::pow(1e-2 * tol * lam / next, 1.0 / static_cast<double>(kNonDegenerateTerms));
        out.s_star_ = std::min(s_series, 0.5 * p.s0);
        k = 16;
    }

    PhaseTrajectory prev = phase_approximant(p, k, opt);
    out.ladder_.push_back({k, prev.nodes().size(), std::numeric_limits<double>::quiet_NaN()});
    while (true) {
        if (2 * k > k_max) {
            throw ConvergenceFailure("stationary_limit: k ladder exceeded k_max");
        }
        PhaseTrajectory next = phase_approximant(p, 2 * k, opt);
        double gap = 0.0;
        for (const OdeNode& node : next.nodes()) {
            if (node.s < out.s_star_) continue;
            gap = std::max(gap, std::abs(prev.value(node.s) - node.v));
        }
        k *= 2;
        out.ladder_.push_back({k, next.nodes().size(), gap});
        if (gap < tol) {
            out.nodes_ = next.nodes();
            break;
        }
        prev = std::move(next);
    }
    return out;
}

namespace {

// x(s) = int_s^{s0} dtau / v(tau) for the limit trajectory.
class AbscissaMap {
public:
    explicit AbscissaMap(const PhaseTrajectory& tr) : tr_(tr), nodes_(tr.nodes()) {
        if (!tr.is_limit()) throw std::invalid_argument("profile needs the limit trajectory");
        s_star_ = tr.s_star();
        j0_ = 0;
        while (j0_ < nodes_.size() && nodes_[j0_].s < s_star_) ++j0_;
        if (j0_ == 0 || j0_ >= nodes_.size()) {
            throw QuadratureFailure("limit trajectory does not straddle the crossover");
        }
        cum_.assign(nodes_.size(), 0.0);
        for (std::size_t j = nodes_.size() - 1; j-- > j0_;) {
            cum_[j] = cum_[j + 1] + segment(j, nodes_[j].s, nodes_[j + 1].s);
        }
        x_star_ = cum_[j0_] + segment(j0_ - 1, s_star_, nodes_[j0_].s);
        // 1/v below s_star as a power series: v = c tau^e (1 + w(tau)), 1/(1 + w) = sum d_n tau^n.
        std::vector<double> r{1.0};
        if (tr.params().degenerate()) {
            const std::vector<double> a = expansion_coeffs(kDegenerateTerms).a;
            for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] / a[0]);
            lead_ = a[0];
        } else {
            lead_ = tr.params().lambda0();
            const std::vector<double> beta =
                nondegenerate_series(tr.params().u_plus, kNonDegenerateTerms);
            for (std::size_t n = 1; n < beta.size(); ++n) r.push_back(beta[n] / lead_);
        }
        d_.assign(r.size(), 0.0);
        d_[0] = 1.0;
        for (std::size_t n = 1; n < r.size(); ++n) {
            double acc = 0.0;
            for (std::size_t k = 1; k <= n; ++k) acc -= r[k] * d_[n - k];
            d_[n] = acc;
        }
    }

    double operator()(double s) const {
        if (s >= nodes_.back().s) return 0.0;
        if (s >= s_star_) {
            if (s < nodes_[j0_].s) return cum_[j0_] + segment(j0_ - 1, s, nodes_[j0_].s);
            auto it = std::upper_bound(nodes_.begin() + static_cast<long>(j0_), nodes_.end(), s,
                                       [](double x, const OdeNode& n) { return x < n.s; });
            const std::size_t j = static_cast<std::size_t>(it - nodes_.begin()) - 1;
            return cum_[j + 1] + segment(j, s, nodes_[j + 1].s);
        }
        return x_star_ + tail_primitive(s_star_) - tail_primitive(s);
    }

    double x_star() const { return x_star_; }

private:
    double segment(std::size_t j, double a, double b) const {
        if (b <= a) return 0.0;
        const OdeNode& n0 = nodes_[j];
        const OdeNode& n1 = nodes_[j + 1];
        auto f = [&](double s) { return 1.0 / hermite(n0, n1, s); };
        return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
    }

    // Antiderivative of 1/v below s_star, integrated term by term.
    double tail_primitive(double t) const {
        if (tr_.params().degenerate()) {
            // 1/v = tau^{-3/2} / a_1 * sum d_n tau^n
            const double rt = std::sqrt(t);
            double acc = 0.0;
            double pw = 1.0 / rt;  // t^{n - 1/2}
            for (std::size_t n = 0; n < d_.size(); ++n) {
                acc += d_[n] * pw / (static_cast<double>(n) - 0.5);
                pw *= t;
            }
            return acc / lead_;
        }
        // 1/v = 1 / (lam tau) * sum d_n tau^n
        double acc = std::log(t);
        double pw = t;
        for (std::size_t n = 1; n < d_.size(); ++n) {
            acc += d_[n] * pw / static_cast<double>(n);
            pw *= t;
        }
        return acc / lead_;
    }

    const PhaseTrajectory& tr_;
    const std::vector<OdeNode>& nodes_;
    double s_star_;
    std::size_t j0_;
    std::vector<double> cum_;
    double x_star_;
    double lead_ = 0.0;
    std::vector<double> d_;
};

}  // namespace

double profile_abscissa(const PhaseTrajectory& limit, double s) {
    AbscissaMap X(limit);
    return X(s);
}

StationaryProfile reconstruct_profile(const PhaseTrajectory& limit, const Grid& grid,
                                      double trunc_tol) {
    const StationaryParams& p = limit.params();
    AbscissaMap X(limit);
    const std::size_t n = grid.size();
    std::vector<double> s(n);
    s[0] = p.s0;
    for (std::size_t i = 1; i < n; ++i) {
        const double x = grid.x(i);
        // Bracket [lo, hi] with X(lo) >= x >= X(hi).
        double hi = s[i - 1];
        double lo = hi;
        double xlo = X(lo);
        while (xlo < x) {
            lo *= 0.5;
            if (lo < 1e-300) throw QuadratureFailure("profile inversion: s underflow");
            xlo = X(lo);
        }
        // Start from an explicit Euler guess, then safeguarded Newton.
        double sc = std::clamp(hi - (x - grid.x(i - 1)) * limit.value(hi), lo, hi);
        if (!(sc > lo && sc < hi)) sc = std::sqrt(lo * hi);
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            const double F = X(sc) - x;
            if (std::abs(F) <= 1e-14 * std::max(1.0, x)) {
                done = true;
                break;
            }
            (F > 0.0 ? lo : hi) = sc;
            double next = sc + F * limit.value(sc);
            if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
            if (std::abs(next - sc) <= 4.0 * std::numeric_limits<double>::epsilon() * sc) {
                sc = next;
                done = true;
                break;
            }
            sc = next;
        }
        if (!done) throw QuadratureFailure("profile inversion did not converge");
        s[i] = sc;
    }

    const double up2 = p.u_plus * p.u_plus;
    std::vector<std::vector<double>> q(5, std::vector<double>(n));
    std::vector<std::vector<double>> u(5, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double si = s[i];
        const double P = up2 + 2.0 * si;
        double v, vx, vxx, vxxx;
        if (si >= limit.s_star()) {
            v = limit.value(si);
            const double g = 1.0 / std::sqrt(P);
            const double gp = -std::pow(P, -1.5);
            const double gpp = 3.0 * std::pow(P, -2.5);
            vx = -si + v * g;
            vxx = v + vx * g - v * v * gp;
            vxxx = vx + vxx * g - 3.0 * v * vx * gp + v * v * v * gpp;
        } else {
            const PhaseTrajectory::Jet J = limit.jet(si);
            v = J.v;
            vx = -J.v * J.dv;
            vxx = J.v * (J.dv * J.dv + J.v * J.d2v);
            vxxx = -J.v * (J.dv * J.dv * J.dv + 4.0 * J.v * J.dv * J.d2v + J.v * J.v * J.d3v);
        }
        q[0][i] = -si;
        q[1][i] = v;
        q[2][i] = vx;
        q[3][i] = vxx;
        q[4][i] = vxxx;

        // ubar = -sqrt(P), P = u_plus^2 - 2 qbar; Faa di Bruno to order 4.
        const double rP = std::sqrt(P);
        const double h1 = -0.5 / rP;
        const double h2 = 0.25 / (P * rP);
        const double h3 = -0.375 / (P * P * rP);
        const double h4 = 0.9375 / (P * P * P * rP);
        const double P1 = -2.0 * v, P2 = -2.0 * vx, P3 = -2.0 * vxx, P4 = -2.0 * vxxx;
        u[0][i] = -rP;
        u[1][i] = h1 * P1;
        u[2][i] = h2 * P1 * P1 + h1 * P2;
        u[3][i] = h3 * P1 * P1 * P1 + 3.0 * h2 * P1 * P2 + h1 * P3;
        u[4][i] = h4 * P1 * P1 * P1 * P1 + 6.0 * h3 * P1 * P1 * P2 +
                  h2 * (3.0 * P2 * P2 + 4.0 * P1 * P3) + h1 * P4;
    }
    u[0][0] = p.u_minus;
    q[0][0] = -p.s0;

    if (std::abs(u[0][n - 1] - p.u_plus) > trunc_tol || std::abs(q[0][n - 1]) > trunc_tol) {
        throw DomainTooShort("stationary profile is not flat at x = L; enlarge the domain");
    }

    StationaryProfile prof{p, grid, std::move(s), {}, {}, limit.s_star()};
    for (int k = 0; k < 5; ++k) {
        prof.q.emplace_back(grid, std::move(q[k]));
        prof.u.emplace_back(grid, std::move(u[k]));
    }
    return prof;
}

DecayBand decay_band(BandKind which, const StationaryParams& p, double x) {
    if (!p.degenerate()) throw std::invalid_argument("closed-form bands are for u_plus = 0");
    const double r = 1.0 / std::sqrt(p.s0);
    const double D1 = r + x / kSqrt2;
    const double D2 = r + x / (2.0 * kSqrt2);
    const bool sx = p.sx_band_valid();
    const bool qxx = p.qxx_band_valid();
    switch (which) {
        case BandKind::Qbar: return {-1.0 / (D2 * D2), -1.0 / (D1 * D1), false, 0, sx};
        case BandKind::QbarX:
            return {(kSqrt2 / 2.0) / (D1 * D1 * D1), kSqrt2 / (D2 * D2 * D2), false, 0, sx};
        case BandKind::QbarXX: return {-3.0 / std::pow(D2, 4), 0.0, false, 0, qxx};
        case BandKind::QbarXXX: {
            const double e = 6.0 * kSqrt2 / std::pow(D2, 5);
            return {-e, e, true, 7, qxx};
        }
        case BandKind::QbarXXXX: {
            const double e = 222.0 / std::pow(D2, 6);
            return {-e, e, true, 8, p.qxxxx_band_valid()};
        }
        case BandKind::Ubar: return {-kSqrt2 / D2, -kSqrt2 / D1, false, 0, sx};
        case BandKind::UbarX: return {1.0 / (4.0 * D1 * D1), 2.0 / (D2 * D2), false, 0, sx};
        case BandKind::UbarXX: {
            const double e = 7.0 * kSqrt2 / (D2 * D2 * D2);
            return {-e, e, true, 0, qxx};
        }
    }
    throw std::invalid_argument("unknown band");
}

DecayBand nondegenerate_qbar_band(const StationaryParams& p, double x) {
    if (p.degenerate()) throw std::invalid_argument("exponential band is for u_plus < 0");
    const double lam = p.lambda0();
    const double e = std::exp(-lam * x);
    const double qm = -p.s0;
    return {qm * e, qm / (1.0 - p.b() / lam * qm) * e, false, 0, true};
}

void write_profile_csv(std::ostream& os, const StationaryProfile& prof) {
    os << "x,ubar,qbar,qbar_x,qbar_xx,qbar_xxx,qbar_xxxx\n";
    char buf[256];
    for (std::size_t i = 0; i < prof.grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      prof.grid.x(i), prof.u[0][i], prof.q[0][i], prof.q[1][i], prof.q[2][i],
                      prof.q[3][i], prof.q[4][i]);
        os << buf;
    }
}

std::string profile_sidecar_json(const StationaryProfile& prof) {
    const StationaryParams& p = prof.params;
    nlohmann::json j;
    j["u_minus"] = p.u_minus;
    j["u_plus"] = p.u_plus;
    j["s0"] = p.s0;
    j["delta"] = p.delta;
    j["case"] = p.degenerate() ? "degenerate" : "non-degenerate";
    j["L"] = prof.grid.length();
    j["n_points"] = prof.grid.size();
    j["s_star"] = prof.s_star;
    j["s_at_L"] = prof.s.back();
    if (p.degenerate()) {
        j["band_valid"] = {{"qbar", p.sx_band_valid()},
                           {"qbar_x", p.sx_band_valid()},
                           {"qbar_xx", p.qxx_band_valid()},
                           {"qbar_xxx", p.qxx_band_valid()},
                           {"qbar_xxxx", p.qxxxx_band_valid()}};
    } else {
        j["lambda0"] = p.lambda0();
        j["b"] = p.b();
    }
    return j.dump(2);
}

}  // namespace radgas
