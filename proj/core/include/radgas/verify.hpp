#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace radgas {

struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;  // measured quantity
    double limit = 0.0;  // threshold it was compared against
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const;
    std::string to_json() const;
};

// Fitted constants are frozen with this factor before the finer lattice is checked.
inline constexpr double kFreezeMargin = 1.25;

// C = margin * max_i y_i / env(t_i).
double fit_constant(const std::vector<double>& t, const std::vector<double>& y,
                    const std::function<double(double)>& env, double margin = kFreezeMargin);

struct ExponentialFit {
    double C;
    double c;  // y ~ C exp(-c (1 + t))
};
// Least-squares slope of log y against 1 + t, then C frozen over the lattice.
ExponentialFit fit_exponential(const std::vector<double>& t, const std::vector<double>& y,
                               double margin = kFreezeMargin);

std::vector<double> linspace(double a, double b, std::size_t n);
std::vector<double> logspace(double a, double b, std::size_t n);

// Elliptic: optimality witnesses of the max-norm bounds, GNS ratios,
// manufactured convergence and randomized bounds.
std::vector<Check> elliptic_witness_checks();
std::vector<Check> elliptic_gns_checks(std::uint64_t seed = 20240611);
std::vector<Check> elliptic_convergence_checks();
std::vector<Check> elliptic_random_checks(std::uint64_t seed = 20240611);
SuiteReport verify_elliptic();

// Rarefaction: monotonicity, range, fan approach, residual envelopes and
// boundary decay of the antisymmetric wave.
std::vector<Check> rarefaction_property_checks();
std::vector<Check> rarefaction_residual_checks();
std::vector<Check> rarefaction_boundary_checks();
SuiteReport verify_rarefaction();

// Stationary: expansion table, phase-plane ladder, expansion brackets,
// degenerate and non-degenerate decay bands, quotient bounds.
std::vector<Check> stationary_coeff_checks();
std::vector<Check> stationary_ladder_checks();
std::vector<Check> stationary_expansion_checks();
std::vector<Check> stationary_degenerate_band_checks();
std::vector<Check> stationary_nondegenerate_checks();
std::vector<Check> stationary_quotient_checks();
SuiteReport verify_stationary();

struct Scenario;
struct NormSeries;

// Checks on a finished run: decay of each sup diagnostic to below decay_ratio
// of its initial value, relative tail of the running integrals after 3/4 of
// the run, w(0,t) = 0, and the out-flow trace identity after t = 1.
std::vector<Check> ibvp_run_checks(const Scenario& sc, const NormSeries& series,
                                   double decay_ratio = 0.1, double tail_limit = 0.05);

}  // namespace radgas
