#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "radgas/grid.hpp"

using namespace radgas;

namespace {

const Norm kAllNorms[] = {Norm::l2(), Norm::sup(), Norm::h(1), Norm::h(2), Norm::h(3), Norm::lp(1.0),
                          Norm::lp(3.5)};

GridFunction random_smooth(const Grid& g, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const double a = U(rng), b = U(rng), c = 2.0 + 2.0 * U(rng), k = 1.0 + U(rng);
    return GridFunction::sample(g, [=](double x) {
        return a * std::exp(-0.3 * (x - c) * (x - c)) + b * std::sin(k * x) * std::exp(-0.2 * x);
    });
}

}  // namespace

TEST_CASE("grid construction") {
    Grid g(10.0, 101);
    CHECK(g.h() == doctest::Approx(0.1));
    CHECK(g.x(37) == 37 * g.h());
    CHECK(g.nodes().size() == 101);
    CHECK_THROWS_AS(Grid(0.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(Grid(1.0, 2), std::invalid_argument);
}

TEST_CASE("grid function invariants") {
    Grid g(1.0, 5);
    CHECK_THROWS_AS(GridFunction(g, {1, 2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(GridFunction(g, {1, 2, NAN, 4, 5}), std::invalid_argument);
    GridFunction f(g, {1, 2, 3, 4, 5});
    CHECK((f + f)[4] == 10.0);
    CHECK((f - f)[2] == 0.0);
    CHECK(f.scaled(-2.0)[1] == -4.0);
}

TEST_CASE("norm examples") {
    Grid unit(1.0, 11);
    CHECK(discrete_norm(GridFunction::sample(unit, [](double) { return 1.0; }), Norm::l2()) ==
          doctest::Approx(1.0).epsilon(1e-14));
    Grid g(40.0, 40001);
    auto e = GridFunction::sample(g, [](double x) { return std::exp(-x); });
    CHECK(std::abs(discrete_norm(e, Norm::l2()) - std::sqrt(0.5)) < 1e-4);
    for (const Norm& n : kAllNorms) CHECK(discrete_norm(GridFunction::zeros(g), n) == 0.0);
    CHECK(discrete_norm(GridFunction(unit, {0, 0, 0, -3, 0, 0, 0, 0, 0, 0, 2}), Norm::sup()) == 3.0);
}

TEST_CASE("norm homogeneity and triangle inequality") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-5.0, 5.0);
    Grid g(8.0, 401);
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction f = random_smooth(g, rng);
        const GridFunction k = random_smooth(g, rng);
        const double c = U(rng);
        for (const Norm& n : kAllNorms) {
            const double nf = discrete_norm(f, n);
            CHECK(std::abs(discrete_norm(f.scaled(c), n) - std::abs(c) * nf) <= 1e-12 * std::abs(c) * nf);
            CHECK(discrete_norm(f + k, n) <= (nf + discrete_norm(k, n)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("fd derivative exactness") {
    Grid g(3.0, 31);
    auto lin = GridFunction::sample(g, [](double x) { return x; });
    auto d1 = fd_derivative(lin, 1);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(d1[i] == doctest::Approx(1.0).epsilon(1e-12));
    auto quad = GridFunction::sample(g, [](double x) { return x * x; });
    auto d2 = fd_derivative(quad, 2);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(d2[i] - 2.0) < 1e-10);
    CHECK_THROWS_AS(fd_derivative(lin, 0), std::invalid_argument);
    CHECK_THROWS_AS(fd_derivative(lin, 5), std::invalid_argument);
    CHECK_THROWS_AS(fd_derivative(GridFunction::zeros(Grid(1.0, 5)), 4), std::invalid_argument);
}

TEST_CASE("fd derivative commutes with scaling") {
    std::mt19937_64 rng(11);
    Grid g(5.0, 201);
    const GridFunction f = random_smooth(g, rng);
    for (int order = 1; order <= 4; ++order) {
        for (double c : {4.0, -0.5, 0.125}) {
            const GridFunction a = fd_derivative(f.scaled(c), order);
            const GridFunction b = fd_derivative(f, order).scaled(c);
            for (std::size_t i = 0; i < g.size(); ++i) CHECK(a[i] == b[i]);
        }
    }
}

TEST_CASE("fd derivative converges at second order") {
    auto f = [](double x) { return std::exp(-x); };
    for (int order = 1; order <= 4; ++order) {
        double prev = 0.0;
        for (std::size_t n : {201u, 401u, 801u}) {
            Grid g(10.0, n);
            auto d = fd_derivative(GridFunction::sample(g, f), order);
            double err = 0.0;
            const double sgn = order % 2 == 0 ? 1.0 : -1.0;
            for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(d[i] - sgn * f(g.x(i))));
            if (prev > 0.0) {
                const double ratio = prev / err;
                CHECK(ratio >= 3.5);
                CHECK(ratio <= 4.5);
            }
            prev = err;
        }
    }
}

TEST_CASE("csv output") {
    Grid g(1.0, 3);
    std::ostringstream os;
    write_csv(os, GridFunction(g, {0.1, 1.0 / 3.0, 2.0}));
    CHECK(os.str() == "x,value\n0,0.10000000000000001\n0.5,0.33333333333333331\n1,2\n");
}
