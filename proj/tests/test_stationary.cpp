#include <doctest.h>

#include <chrono>
#include <cmath>
#include <sstream>

#include "radgas/error.hpp"
#include "radgas/stationary.hpp"
#include "radgas/verify.hpp"

using namespace radgas;

namespace {

void require_all(const std::vector<Check>& cs) {
    for (const Check& c : cs) {
        INFO(c.name << " value=" << c.value << " limit=" << c.limit << " " << c.note);
        CHECK(c.pass);
    }
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(StationaryParams::make(-0.5, -0.6), std::invalid_argument);
    CHECK_THROWS_AS(StationaryParams::make(-0.5, 0.1), std::invalid_argument);
    const auto d = StationaryParams::make(-std::sqrt(0.2), 0.0);
    CHECK(d.degenerate());
    CHECK(d.s0 == doctest::Approx(0.1));
    CHECK(d.sx_band_valid());
    CHECK(d.qxx_band_valid());
    CHECK_FALSE(d.qxxxx_band_valid());
    CHECK_FALSE(StationaryParams::make(-0.6, -0.5).degenerate());
}

TEST_CASE("expansion coefficients") {
    const auto ec = expansion_coeffs(30);
    const std::vector<double> c{1, 3, 24, 285, 4284, 75978, 1530720, 34237485};
    for (int k = 1; k <= 8; ++k) {
        CHECK(ec.c_at(k) == c[static_cast<std::size_t>(k - 1)]);
        CHECK(ec.a_at(k) == doctest::Approx((k % 2 ? 1.0 : -1.0) * std::sqrt(2.0) * c[static_cast<std::size_t>(k - 1)]));
    }
    CHECK(ec.c_exact.at(29) == "30748181131561707029586698737336492002347112");
    CHECK_THROWS(expansion_coeffs(0));
    CHECK_THROWS(expansion_coeffs(31));
}

TEST_CASE("non-degenerate series") {
    const auto beta = nondegenerate_series(-0.5, 4);
    REQUIRE(beta.size() == 4);
    CHECK(beta[0] == doctest::Approx(0.41421356237309515).epsilon(1e-14));
    CHECK(beta[1] == doctest::Approx(1.0219166471782635).epsilon(1e-12));
    CHECK(beta[2] == doctest::Approx(-3.7725170714576852).epsilon(1e-12));
    CHECK(beta[3] == doctest::Approx(17.83124174375827).epsilon(1e-12));
    const auto p = StationaryParams::make(-1.5, -1.0);
    CHECK(p.lambda0() == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0));
}

TEST_CASE("degenerate limit trajectory matches frozen values") {
    const auto p = StationaryParams::make(-std::sqrt(0.2), 0.0);
    const auto lim = stationary_limit(p);
    CHECK(lim.is_limit());
    const std::pair<double, double> oracle[] = {{0.002, 0.00012574402288931738},
                                                {0.01, 0.0013748298317025536},
                                                {0.05, 0.0140562085171131},
                                                {0.1, 0.03660204377987461}};
    for (auto [s, v] : oracle) CHECK(std::abs(lim.value(s) - v) < 1e-9 * v + 1e-13);
}

TEST_CASE("non-degenerate limit trajectory matches frozen values") {
    const auto p = StationaryParams::make(-0.6, -0.5);
    const auto lim = stationary_limit(p);
    const std::pair<double, double> oracle[] = {{0.005, 0.002096155017369263},
                                                {0.02, 0.008665436266783762},
                                                {0.055, 0.02537193006763118}};
    for (auto [s, v] : oracle) CHECK(std::abs(lim.value(s) - v) < 1e-6 * v);
}

TEST_CASE("approximant anchoring") {
    const auto p = StationaryParams::make(-std::sqrt(0.2), 0.0);
    const auto a = phase_approximant(p, 10);
    CHECK(a.k() == 10);
    CHECK(a.nodes().front().s == doctest::Approx(0.01));
    CHECK(a.nodes().front().v == doctest::Approx(0.1));
    CHECK_THROWS(phase_approximant(p, 3));  // 1/k^2 > s0
}

TEST_CASE("profile reconstruction and bands") {
    const auto p = StationaryParams::make(-std::sqrt(0.2), 0.0);
    const auto lim = stationary_limit(p);
    const Grid g(400.0, 4001);
    const auto prof = reconstruct_profile(lim, g);
    CHECK(prof.qbar()[0] == doctest::Approx(-p.s0));
    CHECK(prof.ubar()[0] == doctest::Approx(p.u_minus));
    CHECK(std::abs(profile_abscissa(lim, p.s0)) < 1e-14);
    for (double x : {0.0, 10.0}) {
        const std::size_t i = static_cast<std::size_t>(x / g.h() + 0.5);
        for (BandKind k : {BandKind::Qbar, BandKind::QbarX, BandKind::QbarXX}) {
            const DecayBand b = decay_band(k, p, x);
            CHECK(b.valid);
            const double v = prof.qbar(static_cast<int>(k))[i];
            CHECK(v >= b.lo - 1e-8);
            CHECK(v <= b.hi + 1e-8);
        }
    }
    CHECK_THROWS_AS(reconstruct_profile(lim, Grid(5.0, 101)), DomainTooShort);

    std::ostringstream os;
    write_profile_csv(os, prof);
    CHECK(os.str().rfind("x,", 0) == 0);
    CHECK(profile_sidecar_json(prof).find("\"s0\"") != std::string::npos);
}

TEST_CASE("stationary suite") {
    require_all(stationary_coeff_checks());
    require_all(stationary_ladder_checks());
    require_all(stationary_expansion_checks());
    require_all(stationary_degenerate_band_checks());
    require_all(stationary_nondegenerate_checks());
    require_all(stationary_quotient_checks());
}
