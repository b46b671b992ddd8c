#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "radgas/grid.hpp"
#include "radgas/ode.hpp"

namespace radgas {

struct StationaryParams {
    enum class Case { Degenerate, NonDegenerate };

    double u_minus;
    double u_plus;
    double s0;     // (u_minus^2 - u_plus^2) / 2
    double delta;  // |u_minus - u_plus|
    Case tag;

    // Requires u_minus < u_plus <= 0.
    static StationaryParams make(double u_minus, double u_plus);

    bool degenerate() const noexcept { return tag == Case::Degenerate; }
    // Validity of the closed-form degenerate bands; recorded, not enforced.
    bool sx_band_valid() const noexcept { return degenerate() && s0 < 1.0 / 6.0; }
    bool qxx_band_valid() const noexcept { return degenerate() && s0 < 1.0 / 8.0; }
    // The fourth-derivative band needs s0 below an unstated threshold; 1/16 is
    // used as a conservative stand-in.
    bool qxxxx_band_valid() const noexcept { return degenerate() && s0 <= 1.0 / 16.0; }

    // Non-degenerate linear rate and quadratic bracket coefficient.
    double lambda0() const;
    double b() const;

    double g(double s) const;  // (u_plus^2 + 2s)^{-1/2}
    double rhs(double s, double v) const { return s / v - g(s); }
};

// c_k of the degenerate expansion and a_k = (-1)^{k+1} sqrt(2) c_k.
struct ExpansionCoeffs {
    int K = 0;
    std::vector<std::string> c_exact;  // decimal, index k-1
    std::vector<double> c;
    std::vector<double> a;

    double c_at(int k) const { return c.at(static_cast<std::size_t>(k - 1)); }
    double a_at(int k) const { return a.at(static_cast<std::size_t>(k - 1)); }
};

// Exact recurrence c_1 = 1, c_k = sum_{i+j=k} (2j+1) c_i c_j; 1 <= K <= 30.
ExpansionCoeffs expansion_coeffs(int K);

// sum_{i<=k} a_i s^{(2i+1)/2}
double expansion_partial_sum(const ExpansionCoeffs& ec, int k, double s);

// Taylor coefficients beta_1..beta_n of the non-degenerate limit at s = 0.
std::vector<double> nondegenerate_series(double u_plus, int n);

struct LadderRung {
    long k;
    std::size_t steps;
    double max_gap;  // max over shared samples of v_k - v_{2k}; NaN on the first rung
};

class PhaseTrajectory {
public:
    // k = 0 marks the extrapolated limit.
    long k() const noexcept { return k_; }
    bool is_limit() const noexcept { return k_ == 0; }
    const StationaryParams& params() const noexcept { return params_; }
    const std::vector<OdeNode>& nodes() const noexcept { return nodes_; }
    double s_min() const noexcept { return s_min_; }
    double s_max() const noexcept { return params_.s0; }
    std::optional<double> turning_point() const noexcept { return turning_; }

    // Below s_star the limit uses its small-s expansion; 0 for approximants.
    double s_star() const noexcept { return s_star_; }
    const std::vector<LadderRung>& ladder() const noexcept { return ladder_; }

    double value(double s) const;
    // First three s-derivatives of the trajectory.
    struct Jet {
        double v, dv, d2v, d3v;
    };
    Jet jet(double s) const;

    // n samples log-spaced over (lo, s_max]; lo defaults to the validity floor.
    std::vector<std::pair<double, double>> log_samples(std::size_t n, double lo = 0.0) const;

private:
    friend PhaseTrajectory phase_approximant(const StationaryParams&, long, const OdeOptions&);
    friend PhaseTrajectory stationary_limit(const StationaryParams&, double, long,
                                            const OdeOptions&);

    PhaseTrajectory(StationaryParams p) : params_(p) {}
    double ode_value(double s) const;
    Jet series_jet(double s) const;

    StationaryParams params_;
    long k_ = 0;
    std::vector<OdeNode> nodes_;
    double s_min_ = 0.0;
    std::optional<double> turning_;
    double s_star_ = 0.0;
    std::vector<double> series_;  // a_i (degenerate) or beta_n (non-degenerate)
    std::vector<LadderRung> ladder_;
};

OdeOptions default_phase_options();

// Approximant anchored at (1/k^2, 1/k) (degenerate, needs 1/k^2 < s0) or at
// (0, 1/k) (non-degenerate), integrated up to s0.
PhaseTrajectory phase_approximant(const StationaryParams& p, long k,
                                  const OdeOptions& opt = default_phase_options());

// Limit of the approximants by k-doubling until successive rungs agree to tol
// on s >= s_star; below s_star the small-s expansion is used.
PhaseTrajectory stationary_limit(const StationaryParams& p, double tol = 1e-10,
                                 long k_max = 1L << 22,
                                 const OdeOptions& opt = default_phase_options());

struct StationaryProfile {
    StationaryParams params;
    Grid grid;
    std::vector<double> s;          // s(x_i) = -qbar(x_i)
    std::vector<GridFunction> q;    // qbar and its x-derivatives, orders 0..4
    std::vector<GridFunction> u;    // ubar and its x-derivatives, orders 0..4
    double s_star;                  // crossover used by the limit trajectory

    const GridFunction& qbar(int order = 0) const { return q.at(static_cast<std::size_t>(order)); }
    const GridFunction& ubar(int order = 0) const { return u.at(static_cast<std::size_t>(order)); }
};

// Inverts x(s) = int_s^{s0} dtau / v(tau) at every node and evaluates the
// profile with derivatives to order 4. Throws DomainTooShort when
// |ubar(L) - u_plus| or |qbar(L)| exceeds trunc_tol.
StationaryProfile reconstruct_profile(const PhaseTrajectory& limit, const Grid& grid,
                                      double trunc_tol = 1e-2);

// x(s) for the limit trajectory; exposed for diagnostics.
double profile_abscissa(const PhaseTrajectory& limit, double s);

enum class BandKind { Qbar, QbarX, QbarXX, QbarXXX, QbarXXXX, Ubar, UbarX, UbarXX };

struct DecayBand {
    double lo;
    double hi;
    bool envelope;          // |value| <= hi, lo = -hi
    int generic_order = 0;  // exponent m of an extra C / D^m term, 0 if none
    bool valid;             // s0 inside the threshold the band is stated for
};

// Closed-form degenerate decay bands with D1 = 1/sqrt(s0) + x/sqrt(2) and
// D2 = 1/sqrt(s0) + x/(2 sqrt(2)).
DecayBand decay_band(BandKind which, const StationaryParams& p, double x);

// Non-degenerate exponential envelope for qbar.
DecayBand nondegenerate_qbar_band(const StationaryParams& p, double x);

void write_profile_csv(std::ostream& os, const StationaryProfile& prof);
std::string profile_sidecar_json(const StationaryProfile& prof);

}  // namespace radgas
