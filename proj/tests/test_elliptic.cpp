#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "radgas/elliptic.hpp"
#include "radgas/verify.hpp"

using namespace radgas;

namespace {

double max_error(const GridFunction& z, double (*exact)(double)) {
    double e = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) e = std::max(e, std::abs(z[i] - exact(z.grid().x(i))));
    return e;
}

double exp_neg(double x) { return std::exp(-x); }
double one(double) { return 1.0; }
double x_exp(double x) { return x * std::exp(-x); }

bool all_pass(const std::vector<Check>& cs) {
    bool ok = true;
    for (const Check& c : cs) {
        INFO(c.name << " value=" << c.value << " limit=" << c.limit);
        CHECK(c.pass);
        ok = ok && c.pass;
    }
    return ok;
}

}  // namespace

TEST_CASE("tridiagonal solve") {
    std::vector<double> a{0, 1, 1}, b{4, 4, 4}, c{1, 1, 0}, d{5, 6, 5};
    solve_tridiagonal(a, b, c, d);
    for (double v : d) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("screened Poisson examples") {
    Grid g(40.0, 4001);
    const double h2 = g.h() * g.h();
    auto s1 = solve_screened_poisson(GridFunction::zeros(g), LeftBC::neumann(-1.0));
    CHECK(max_error(s1.z, exp_neg) < h2);

    // f = 1 with g = 0: z = 1 up to the boundary layer forced by z(L) = 0.
    Grid shortg(40.0, 4001);
    auto s2 = solve_screened_poisson(GridFunction::sample(shortg, one), LeftBC::neumann(0.0));
    double e = 0.0;
    for (std::size_t i = 0; shortg.x(i) < 20.0; ++i) e = std::max(e, std::abs(s2.z[i] - 1.0));
    CHECK(e < h2);

    auto f3 = GridFunction::sample(g, [](double x) { return 2.0 * std::exp(-x); });
    auto s3 = solve_screened_poisson(f3, LeftBC::dirichlet(0.0));
    CHECK(max_error(s3.z, x_exp) < h2);
    CHECK(s3.source_sup == doctest::Approx(2.0));
    CHECK(screened_poisson_residual(s3.z, f3) < 10.0 * h2 * 3.0);
}

TEST_CASE("Neumann solution respects the first max-norm bound") {
    Grid g(30.0, 3001);
    auto f = GridFunction::sample(g, [](double x) { return std::sin(3.0 * x) * std::exp(-0.1 * x); });
    auto sol = solve_screened_poisson(f, LeftBC::neumann(0.7));
    CHECK(discrete_norm(sol.z, Norm::sup()) <= sol.source_sup + 0.7 + 1e-6);
}

TEST_CASE("kernel representation") {
    Grid g(40.0, 4001);
    auto zero = GridFunction::zeros(g);
    CHECK(bessel_solution(zero, -1.0, 1.0).u == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK_THROWS_AS(bessel_solution(zero, 0.0, 41.0), std::out_of_range);
    CHECK_THROWS_AS(bessel_solution(zero, 0.0, -1.0), std::out_of_range);

    // Agreement with the discrete Dirichlet-free Neumann solve.
    auto f = GridFunction::sample(g, [](double x) { return std::exp(-(x - 6.0) * (x - 6.0)); });
    auto sol = solve_screened_poisson(f, LeftBC::neumann(0.0));
    for (double x : {0.0, 3.0, 6.0, 10.0}) {
        const std::size_t i = static_cast<std::size_t>(x / g.h() + 0.5);
        const BesselValue bv = bessel_solution(f, 0.0, g.x(i));
        CHECK(std::abs(bv.u - sol.z[i]) < 10.0 * g.h() * g.h());
        CHECK(bv.u_xx == doctest::Approx(bv.u - f[i]).epsilon(1e-12));
    }
}

TEST_CASE("GNS extremals and undefined ratios") {
    CHECK(gns_extremal_line(1.0) == 0.5);
    CHECK(gns_extremal_line(3.0) == -0.5);
    CHECK(gns_extremal_line(5.0) == 0.5);
    CHECK(gns_extremal_halfline(0.0) == -0.25);
    CHECK(gns_extremal_halfline(7.0) == 0.25);
    Grid g(4.0, 41);
    CHECK_FALSE(gns_ratio(GridFunction::zeros(g), GnsDomain::HalfLine).has_value());
    CHECK_FALSE(gns_ratio(GridFunction::sample(g, [](double x) { return 1.0; }), GnsDomain::HalfLine)
                    .has_value());
    Grid c(20.0, 20001);
    auto gauss = GridFunction::sample(c, [](double x) { return std::exp(-(x - 10) * (x - 10)); });
    CHECK(*gns_ratio(gauss, GnsDomain::FullLine) < 1.0);
}

TEST_CASE("elliptic suite") {
    CHECK(all_pass(elliptic_witness_checks()));
    CHECK(all_pass(elliptic_gns_checks()));
    CHECK(all_pass(elliptic_convergence_checks()));
    CHECK(all_pass(elliptic_random_checks(99)));
}
