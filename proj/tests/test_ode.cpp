#include <doctest.h>

#include <cmath>

#include "radgas/error.hpp"
#include "radgas/ode.hpp"

using namespace radgas;

TEST_CASE("dp45 exponential growth") {
    auto r = integrate_dp45([](double, double v) { return v; }, 0.0, 1.0, 2.0);
    REQUIRE(r.nodes.size() >= 2);
    CHECK(r.nodes.front().s == 0.0);
    CHECK(r.nodes.back().s == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.nodes.back().v == doctest::Approx(std::exp(2.0)).epsilon(1e-10));
}

TEST_CASE("dp45 Hermite interpolation between nodes") {
    OdeOptions opt;
    opt.h_rel_max = 0.05;
    auto r = integrate_dp45([](double s, double) { return std::cos(s); }, 1.0, 1.0 + std::sin(1.0), 5.0, opt);
    double err = 0.0, derr = 0.0;
    for (std::size_t i = 0; i + 1 < r.nodes.size(); ++i) {
        const double s = 0.5 * (r.nodes[i].s + r.nodes[i + 1].s);
        err = std::max(err, std::abs(hermite(r.nodes[i], r.nodes[i + 1], s) - 1.0 - std::sin(s)));
        derr = std::max(derr, std::abs(hermite_derivative(r.nodes[i], r.nodes[i + 1], s) - std::cos(s)));
    }
    CHECK(err < 1e-6);
    CHECK(derr < 1e-5);
}

TEST_CASE("dp45 keeps v positive") {
    // v' = -1 from v = 1 reaches zero at s = 1; integration past it must fail.
    CHECK_THROWS_AS(integrate_dp45([](double, double) { return -1.0; }, 0.0, 1.0, 2.0),
                    IntegratorFailure);
}
