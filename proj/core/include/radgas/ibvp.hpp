#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "radgas/elliptic.hpp"
#include "radgas/grid.hpp"
#include "radgas/rarefaction.hpp"
#include "radgas/stationary.hpp"

namespace radgas {

// Convex flux with its derivative and the minimum point of f (where f' = 0).
struct ConvexFlux {
    double (*f)(double);
    double (*df)(double);
    double sonic;

    static ConvexFlux burgers();
    // Exact Riemann (Godunov) flux for convex f.
    double godunov(double ul, double ur) const;
};

struct PerturbationSpec {
    enum class Shape { Gaussian, CosineBump };
    Shape shape = Shape::Gaussian;
    double amplitude = 0.0;
    double center = 20.0;
    double width = 1.0;

    double operator()(double x) const;
    // Closed support [lo, hi]; the Gaussian is cut at 8 widths.
    double support_lo() const;
    double support_hi() const;
};

enum class Scheme { Muscl, Godunov };

struct ScenarioConfig {
    int case_id = 2;
    double u_minus = -0.447;
    double u_plus = 0.0;
    double L = 400.0;
    std::size_t n_points = 8001;
    double cfl = 0.8;
    double t_final = 400.0;
    PerturbationSpec perturbation;
    std::vector<double> sample_times;
    Scheme scheme = Scheme::Muscl;
    double time_shift = 1.0;   // rarefaction targets are evaluated at t + time_shift
    double dt_max = 0.5;       // absolute cap on the time step
    double trunc_tol = 1e-2;   // far-field flatness required of the target at x = L
    double limit_tol = 1e-10;  // tolerance of the stationary k-ladder
};

ScenarioConfig parse_config(const std::string& json_text);
std::string config_to_json(const ScenarioConfig& cfg);
// Applies "key=value" where key is a top-level field or perturbation.<field>.
void apply_override(ScenarioConfig& cfg, const std::string& assignment);

// Asymptotic target (u, q)(x, t) of one of the five cases.
class WavePattern {
public:
    enum class Kind { Rarefaction, Stationary, Superposition };

    static WavePattern rarefaction(ModifiedWave wave, double time_shift);
    static WavePattern stationary(std::shared_ptr<const StationaryProfile> profile);
    static WavePattern superposition(std::shared_ptr<const StationaryProfile> profile,
                                     RarefactionFamily fan, double time_shift);

    Kind kind() const noexcept { return kind_; }
    const StationaryProfile* profile() const noexcept { return profile_.get(); }
    const std::optional<ModifiedWave>& wave() const noexcept { return wave_; }
    double time_shift() const noexcept { return t0_; }

    // Target values on every node of grid at time t.
    void sample(const Grid& grid, double t, std::vector<double>& u, std::vector<double>& q) const;

private:
    Kind kind_ = Kind::Stationary;
    std::shared_ptr<const StationaryProfile> profile_;
    std::optional<ModifiedWave> wave_;
    std::optional<RarefactionFamily> fan_;
    double t0_ = 0.0;
};

struct Scenario {
    ScenarioConfig config;
    Grid grid;
    ConvexFlux flux;
    WavePattern target;

    bool outflow() const noexcept { return config.u_minus < 0.0; }
};

// Validates signs, builds the target and checks that it is flat at x = L.
Scenario make_scenario(const ScenarioConfig& cfg);

struct SimState {
    double t = 0.0;
    GridFunction u;
    GridFunction q;
    std::size_t steps = 0;
};

// u = target at t = 0 plus the perturbation; q solved from u.
SimState initial_state(const Scenario& sc);

// Largest admissible step cfl * h / max|f'(u)|, capped by dt_max.
double stable_dt(const SimState& state, const Scenario& sc);

// One SSP-RK2 step. Throws CflViolation (state untouched) if dt exceeds the
// stable step, StepFailure on non-finite values.
SimState step(const SimState& state, const Scenario& sc, double dt);

// q from -q_xx + q = -u_x with the case-dependent left closure: q(0) = 0 for
// u_minus >= 0, q_x(0) = -f'(u_minus) u_x(0) otherwise; q(L) = 0.
GridFunction solve_heat_flux(const GridFunction& u, const Scenario& sc);

// Hyperbolic part -(F_{i+1/2} - F_{i-1/2}) / h at every node (zero at the
// Dirichlet node), with the two boundary face fluxes.
struct HyperbolicRhs {
    std::vector<double> rhs;
    double flux_left;   // F_{1/2}
    double flux_right;  // F_{n-1/2}
};
HyperbolicRhs hyperbolic_rhs(const GridFunction& u, const Scenario& sc);

struct NormSample {
    double t;
    double w_l2, w_h1, w_h2, z_h3;
    double sup_w, sup_wx, sup_z, sup_zx, sup_zxx;
    double w0;        // w(0, t)
    double wx0, wxx0, zx0;
    double trace_residual;  // q_x(0,t) + u_minus u_x(0,t)
    double int_wx_h1_sq;    // int_0^t ||w_x||_1^2
    double int_z_h3_sq;     // int_0^t ||z||_3^2
};

struct NormSeries {
    std::vector<NormSample> samples;
};

// w = u - target_u, z = q - target_q at the state's time.
std::pair<GridFunction, GridFunction> perturbation(const SimState& state, const Scenario& sc);

struct RunResult {
    NormSeries series;
    SimState final_state;
};

using StepObserver = std::function<void(const SimState&)>;

// Advances to t_final, sampling the diagnostics at t = 0, each sample time
// and t_final. Step failures are rethrown as StepFailure with the time.
RunResult run(const Scenario& sc, const StepObserver& observer = {});

void write_norm_series_csv(std::ostream& os, const NormSeries& series);

}  // namespace radgas
