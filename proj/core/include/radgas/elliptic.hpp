#pragma once

#include <optional>
#include <span>
#include <vector>

#include "radgas/grid.hpp"

namespace radgas {

struct LeftBC {
    enum class Kind { Dirichlet, Neumann };
    Kind kind = Kind::Dirichlet;
    double value = 0.0;  // z(0) for Dirichlet, z_x(0) for Neumann

    static LeftBC dirichlet(double v) { return {Kind::Dirichlet, v}; }
    static LeftBC neumann(double g) { return {Kind::Neumann, g}; }
};

struct EllipticSolution {
    GridFunction z;
    LeftBC bc;
    double source_sup;
};

// In-place Thomas algorithm. a: sub-diagonal (a[0] unused), b: diagonal,
// c: super-diagonal (c[n-1] unused), d: right-hand side, overwritten with x.
void solve_tridiagonal(std::span<const double> a, std::span<const double> b,
                       std::span<const double> c, std::span<double> d);

// Second-order finite-difference solve of -z'' + z = f on [0, L] with z(L) = 0.
EllipticSolution solve_screened_poisson(const GridFunction& f, LeftBC bc);

// Same solve into a caller-owned buffer; used in the time loop to avoid
// reallocating. scratch is resized as needed.
void solve_screened_poisson_into(std::span<const double> f, double h, LeftBC bc,
                                 std::span<double> z, std::vector<double>& scratch);

// Interior residual max |-z'' + z - f| by centered differences.
double screened_poisson_residual(const GridFunction& z, const GridFunction& f);

struct BesselValue {
    double u;
    double u_x;
    double u_xx;
};

// Kernel representation of the Neumann problem -u'' + u = f, u_x(0) = g on
// the half line. f is taken piecewise constant on the dual cells of its grid
// and integrated exactly against the reflected kernel.
BesselValue bessel_solution(const GridFunction& f, double g, double x);

enum class GnsDomain { FullLine, HalfLine };

// ||u_x|| / (K ||u||^{1/2} ||u_xx||^{1/2}) in sup norms, K = sqrt(2) on the
// line and 2 on the half line. nullopt when ||u|| or ||u_xx|| vanishes.
std::optional<double> gns_ratio(const GridFunction& u, GnsDomain domain);

// Extremal functions of the sup-norm interpolation inequality.
double gns_extremal_line(double x);      // 4-periodic parabolic spline
double gns_extremal_halfline(double x);  // quadratic cap, flat for x >= 1

}  // namespace radgas
