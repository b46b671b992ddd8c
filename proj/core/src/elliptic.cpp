#include "radgas/elliptic.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace radgas {

void solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<double> d) {
    const std::size_t n = d.size();
    if (a.size() != n || b.size() != n || c.size() != n) {
        throw std::invalid_argument("tridiagonal band size mismatch");
    }
    std::vector<double> cp(n);
    double beta = b[0];
    if (beta == 0.0) throw std::domain_error("singular tridiagonal system");
    cp[0] = c[0] / beta;
    d[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        beta = b[i] - a[i] * cp[i - 1];
        if (beta == 0.0) throw std::domain_error("singular tridiagonal system");
        cp[i] = c[i] / beta;
        d[i] = (d[i] - a[i] * d[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= cp[i] * d[i + 1];
}

void solve_screened_poisson_into(std::span<const double> f, double h, LeftBC bc,
                                 std::span<double> z, std::vector<double>& scratch) {
    const std::size_t n = f.size();
    if (n < 3 || z.size() != n) throw std::invalid_argument("screened Poisson: bad sizes");
    if (!std::isfinite(bc.value)) throw std::invalid_argument("non-finite boundary value");
    const double h2 = h * h;
    const double diag = 2.0 + h2;

    // Unknowns z_0 .. z_{n-2}; z_{n-1} = 0. Constant off-diagonals -1 in the
    // interior, so only the modified pivots need storage.
    const std::size_t m = n - 1;
    scratch.resize(m);
    std::vector<double>& cp = scratch;
    double b0, c0, d0;
    if (bc.kind == LeftBC::Kind::Dirichlet) {
        b0 = 1.0;
        c0 = 0.0;
        d0 = bc.value;
    } else {
        // -3z0 + 4z1 - z2 = 2hg with z2 eliminated through the row at node 1.
        b0 = -2.0;
        c0 = 2.0 - h2;
        d0 = 2.0 * h * bc.value - h2 * f[1];
    }
    cp[0] = c0 / b0;
    z[0] = d0 / b0;
    for (std::size_t i = 1; i < m; ++i) {
        const double beta = diag + cp[i - 1];
        assert(beta != 0.0);
        cp[i] = -1.0 / beta;
        z[i] = (h2 * f[i] + z[i - 1]) / beta;
    }
    z[m] = 0.0;
    for (std::size_t i = m - 1; i-- > 0;) z[i] -= cp[i] * z[i + 1];
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(z[i])) throw std::domain_error("screened Poisson: non-finite solution");
    }
}

EllipticSolution solve_screened_poisson(const GridFunction& f, LeftBC bc) {
    std::vector<double> z(f.size());
    std::vector<double> scratch;
    solve_screened_poisson_into(f.values(), f.grid().h(), bc, z, scratch);
    double fsup = discrete_norm(f, Norm::sup());
    return {GridFunction(f.grid(), std::move(z)), bc, fsup};
}

double screened_poisson_residual(const GridFunction& z, const GridFunction& f) {
    if (!(z.grid() == f.grid())) throw std::invalid_argument("grid mismatch");
    const double h2 = z.grid().h() * z.grid().h();
    double r = 0.0;
    for (std::size_t i = 1; i + 1 < z.size(); ++i) {
        double zxx = (z[i - 1] - 2.0 * z[i] + z[i + 1]) / h2;
        r = std::max(r, std::abs(-zxx + z[i] - f[i]));
    }
    return r;
}

namespace {

// Integrals over [a, b] of e^{-|x-y|} and sign(y-x) e^{-|x-y|}.
struct KernelIntegrals {
    double even;
    double odd;
};

KernelIntegrals near_kernel(double x, double a, double b) {
    if (b <= x) {
        // e^{-(x-b)} - e^{-(x-a)}
        double v = std::exp(-(x - b)) * -std::expm1(-(b - a));
        return {v, -v};
    }
    if (a >= x) {
        double v = std::exp(-(a - x)) * -std::expm1(-(b - a));
        return {v, v};
    }
    double left = -std::expm1(-(x - a));
    double right = -std::expm1(-(b - x));
    return {left + right, right - left};
}

}  // namespace

BesselValue bessel_solution(const GridFunction& f, double g, double x) {
    const Grid& grid = f.grid();
    const double L = grid.length();
    if (!(x >= 0.0 && x <= L)) throw std::out_of_range("bessel_solution: x outside grid");
    const double h = grid.h();
    const std::size_t n = f.size();
    const double ex = std::exp(-x);

    double u = 0.0;
    double ux = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == 0.0) continue;
        double a = std::max(0.0, (static_cast<double>(i) - 0.5) * h);
        double b = std::min(L, (static_cast<double>(i) + 0.5) * h);
        KernelIntegrals k = near_kernel(x, a, b);
        // Integral of e^{-(x+y)} over [a, b].
        double far = ex * std::exp(-a) * -std::expm1(-(b - a));
        u += f[i] * (k.even + far);
        ux += f[i] * (k.odd - far);
    }
    u = 0.5 * u - g * ex;
    ux = 0.5 * ux + g * ex;

    // f(x): node value on nodes, linear interpolation between them.
    double t = x / h;
    std::size_t i0 = std::min(static_cast<std::size_t>(t), n - 1);
    double fx;
    double frac = t - static_cast<double>(i0);
    if (frac == 0.0 || i0 + 1 >= n) {
        fx = f[i0];
    } else {
        fx = (1.0 - frac) * f[i0] + frac * f[i0 + 1];
    }
    return {u, ux, u - fx};
}

std::optional<double> gns_ratio(const GridFunction& u, GnsDomain domain) {
    double usup = discrete_norm(u, Norm::sup());
    double uxsup = discrete_norm(fd_derivative(u, 1), Norm::sup());
    double uxxsup = discrete_norm(fd_derivative(u, 2), Norm::sup());
    if (usup == 0.0 || uxxsup == 0.0) return std::nullopt;
    const double K = domain == GnsDomain::FullLine ? std::sqrt(2.0) : 2.0;
    return uxsup / (K * std::sqrt(usup) * std::sqrt(uxxsup));
}

double gns_extremal_line(double x) {
    double r = std::fmod(x, 4.0);
    if (r < 0.0) r += 4.0;
    if (r < 2.0) return r * (1.0 - 0.5 * r);
    return (r - 2.0) * (0.5 * r - 2.0);
}

double gns_extremal_halfline(double x) {
    if (x < 1.0) return x * (1.0 - 0.5 * x) - 0.25;
    return 0.25;
}

}  // namespace radgas
