#include <doctest.h>

#include <cmath>

#include "radgas/rarefaction.hpp"
#include "radgas/verify.hpp"

using namespace radgas;

TEST_CASE("inviscid fan") {
    CHECK(riemann_rarefaction(0.0, 1.0, 0.5, 1.0) == 0.5);
    CHECK(riemann_rarefaction(0.2, 1.0, 0.1, 1.0) == 0.2);
    CHECK(riemann_rarefaction(0.0, 1.0, 5.0, 1.0) == 1.0);
}

TEST_CASE("erfc helpers") {
    for (double z : {-3.0, -0.5, 0.0, 0.7, 4.0}) {
        CHECK(log_erfc(z) == doctest::Approx(std::log(std::erfc(z))).epsilon(1e-13));
    }
    // Far tail where erfc underflows: log erfc(z) ~ -z^2 - log(z sqrt(pi)).
    const double z = 40.0;
    CHECK(log_erfc(z) == doctest::Approx(-z * z - std::log(z * std::sqrt(M_PI))).epsilon(1e-6));
    CHECK(mills_ratio(0.0) == doctest::Approx(2.0 / std::sqrt(M_PI)));
}

TEST_CASE("smooth Burgers recovers the step and solves the equation") {
    CHECK(std::abs(smooth_burgers(-0.5, 0.5, -1.0, 1e-6, 0) + 0.5) < 1e-12);
    CHECK(std::abs(smooth_burgers(-0.5, 0.5, 1.0, 1e-6, 0) - 0.5) < 1e-12);
    CHECK(smooth_burgers(-0.5, 0.5, 0.0, 3.0, 0) == doctest::Approx(0.0).epsilon(1e-14));
    for (double x : {-2.0, 0.3, 4.0}) {
        const double t = 2.0, e = 1e-4;
        const double ut = (smooth_burgers(0.1, 0.7, x, t + e, 0) - smooth_burgers(0.1, 0.7, x, t - e, 0)) / (2 * e);
        const double u = smooth_burgers(0.1, 0.7, x, t, 0);
        const double ux = smooth_burgers(0.1, 0.7, x, t, 1);
        const double uxx = smooth_burgers(0.1, 0.7, x, t, 2);
        CHECK(std::abs(ut + u * ux - uxx) < 1e-7);
        const BurgersJet j = smooth_burgers_jet(0.1, 0.7, x, t);
        CHECK(j.u == doctest::Approx(u));
        CHECK(j.offset == doctest::Approx(u - 0.1));
    }
}

TEST_CASE("family construction") {
    CHECK(RarefactionFamily::make(0.0, 0.5).tag == RarefactionFamily::Case::Case4);
    CHECK(RarefactionFamily::make(0.2, 0.5).tag == RarefactionFamily::Case::Case5);
    CHECK_THROWS(RarefactionFamily::make(0.5, 0.2));
    CHECK_THROWS(RarefactionFamily::make(-0.1, 0.2));
    // Case 4 smooth wave vanishes at the boundary by symmetry.
    const auto c4 = RarefactionFamily::make(0.0, 0.5);
    for (double t : {0.5, 3.0, 40.0}) CHECK(std::abs(smooth_rarefaction(c4, 0.0, t, 0)) < 1e-15);
}

TEST_CASE("modified wave boundary values and correctors") {
    for (auto fam : {RarefactionFamily::make(0.0, 0.5), RarefactionFamily::make(0.2, 0.6)}) {
        ModifiedWave w(fam);
        for (double t : {0.1, 1.0, 10.0}) {
            const auto v = w.eval(0.0, t);
            CHECK(v.phi == doctest::Approx(fam.u_minus).epsilon(1e-14));
            CHECK(std::abs(v.psi) < 1e-14);
        }
        CHECK(std::abs(w.eval(30.0, 1.0).u_hat) < 1e-12 * fam.delta());
        CHECK(std::abs(w.residuals(30.0, 1.0).r1) < 1e-10);
    }
    ModifiedWave c4(RarefactionFamily::make(0.0, 0.5));
    for (double x : {0.0, 1.0, 5.0}) CHECK(c4.eval(x, 2.0).u_hat == 0.0);
}

TEST_CASE("rarefaction suite") {
    for (const auto& group : {rarefaction_property_checks(), rarefaction_residual_checks(),
                              rarefaction_boundary_checks()}) {
        for (const Check& c : group) {
            INFO(c.name << " value=" << c.value << " limit=" << c.limit);
            CHECK(c.pass);
        }
    }
}
