#include "radgas/ibvp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "radgas/error.hpp"

namespace radgas {

namespace {

double burgers_f(double u) { return 0.5 * u * u; }
double burgers_df(double u) { return u; }

double van_leer(double a, double b) {
    const double ab = a * b;
    return ab > 0.0 ? 2.0 * ab / (a + b) : 0.0;
}

}  // namespace

ConvexFlux ConvexFlux::burgers() { return {&burgers_f, &burgers_df, 0.0}; }

double ConvexFlux::godunov(double ul, double ur) const {
    if (ul <= ur) {
        // min of f over [ul, ur]
        return f(std::clamp(sonic, ul, ur));
    }
    return std::max(f(ul), f(ur));
}

double PerturbationSpec::operator()(double x) const {
    if (amplitude == 0.0) return 0.0;
    const double d = x - center;
    switch (shape) {
        case Shape::Gaussian:
            if (std::abs(d) > 8.0 * width) return 0.0;
            return amplitude * std::exp(-0.5 * d * d / (width * width));
        case Shape::CosineBump: {
            if (std::abs(d) >= width) return 0.0;
            const double c = std::cos(0.5 * M_PI * d / width);
            return amplitude * c * c * c * c;
        }
    }
    return 0.0;
}

double PerturbationSpec::support_lo() const {
    return center - (shape == Shape::Gaussian ? 8.0 : 1.0) * width;
}

double PerturbationSpec::support_hi() const {
    return center + (shape == Shape::Gaussian ? 8.0 : 1.0) * width;
}

namespace {

Scheme parse_scheme(const std::string& s) {
    if (s == "muscl") return Scheme::Muscl;
    if (s == "godunov") return Scheme::Godunov;
    throw std::invalid_argument("unknown scheme '" + s + "' (muscl or godunov)");
}

PerturbationSpec::Shape parse_shape(const std::string& s) {
    if (s == "gaussian") return PerturbationSpec::Shape::Gaussian;
    if (s == "cosine" || s == "cosine_bump") return PerturbationSpec::Shape::CosineBump;
    throw std::invalid_argument("unknown perturbation shape '" + s + "'");
}

nlohmann::json to_json_obj(const ScenarioConfig& c) {
    nlohmann::json j;
    j["case_id"] = c.case_id;
    j["u_minus"] = c.u_minus;
    j["u_plus"] = c.u_plus;
    j["L"] = c.L;
    j["n_points"] = c.n_points;
    j["cfl"] = c.cfl;
    j["t_final"] = c.t_final;
    j["perturbation"] = {
        {"shape", c.perturbation.shape == PerturbationSpec::Shape::Gaussian ? "gaussian" : "cosine"},
        {"amplitude", c.perturbation.amplitude},
        {"center", c.perturbation.center},
        {"width", c.perturbation.width}};
    j["sample_times"] = c.sample_times;
    j["scheme"] = c.scheme == Scheme::Muscl ? "muscl" : "godunov";
    j["time_shift"] = c.time_shift;
    j["dt_max"] = c.dt_max;
    j["trunc_tol"] = c.trunc_tol;
    j["limit_tol"] = c.limit_tol;
    return j;
}

ScenarioConfig from_json_obj(const nlohmann::json& j) {
    static const char* required[] = {"case_id", "u_minus", "u_plus",       "L",
                                     "n_points", "cfl",    "t_final",      "perturbation",
                                     "sample_times"};
    for (const char* k : required) {
        if (!j.contains(k)) throw std::invalid_argument(std::string("config is missing '") + k + "'");
    }
    ScenarioConfig c;
    c.case_id = j.at("case_id").get<int>();
    c.u_minus = j.at("u_minus").get<double>();
    c.u_plus = j.at("u_plus").get<double>();
    c.L = j.at("L").get<double>();
    c.n_points = j.at("n_points").get<std::size_t>();
    c.cfl = j.at("cfl").get<double>();
    c.t_final = j.at("t_final").get<double>();
    const auto& p = j.at("perturbation");
    c.perturbation.shape = parse_shape(p.value("shape", std::string("gaussian")));
    c.perturbation.amplitude = p.at("amplitude").get<double>();
    c.perturbation.center = p.at("center").get<double>();
    c.perturbation.width = p.at("width").get<double>();
    c.sample_times = j.at("sample_times").get<std::vector<double>>();
    if (j.contains("scheme")) c.scheme = parse_scheme(j.at("scheme").get<std::string>());
    if (j.contains("time_shift")) c.time_shift = j.at("time_shift").get<double>();
    if (j.contains("dt_max")) c.dt_max = j.at("dt_max").get<double>();
    if (j.contains("trunc_tol")) c.trunc_tol = j.at("trunc_tol").get<double>();
    if (j.contains("limit_tol")) c.limit_tol = j.at("limit_tol").get<double>();
    return c;
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    try {
        return from_json_obj(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad config field: ") + e.what());
    }
}

std::string config_to_json(const ScenarioConfig& cfg) { return to_json_obj(cfg).dump(2); }

void apply_override(ScenarioConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::invalid_argument("override must look like key=value: " + assignment);
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    nlohmann::json value;
    try {
        value = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error&) {
        value = raw;  // bare strings such as scheme=godunov
    }
    nlohmann::json j = to_json_obj(cfg);
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
        if (!j.contains(key)) throw std::invalid_argument("unknown config key '" + key + "'");
        j[key] = value;
    } else {
        const std::string head = key.substr(0, dot);
        const std::string tail = key.substr(dot + 1);
        if (head != "perturbation" || !j[head].contains(tail)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
        j[head][tail] = value;
    }
    try {
        cfg = from_json_obj(j);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad override '" + assignment + "': " + e.what());
    }
}

WavePattern WavePattern::rarefaction(ModifiedWave wave, double time_shift) {
    WavePattern w;
    w.kind_ = Kind::Rarefaction;
    w.wave_ = wave;
    w.t0_ = time_shift;
    return w;
}

WavePattern WavePattern::stationary(std::shared_ptr<const StationaryProfile> profile) {
    WavePattern w;
    w.kind_ = Kind::Stationary;
    w.profile_ = std::move(profile);
    return w;
}

WavePattern WavePattern::superposition(std::shared_ptr<const StationaryProfile> profile,
                                       RarefactionFamily fan, double time_shift) {
    if (fan.tag != RarefactionFamily::Case::Case4) {
        throw std::invalid_argument("superposition uses the fan leaving u = 0");
    }
    WavePattern w;
    w.kind_ = Kind::Superposition;
    w.profile_ = std::move(profile);
    w.fan_ = fan;
    w.t0_ = time_shift;
    return w;
}

void WavePattern::sample(const Grid& grid, double t, std::vector<double>& u,
                         std::vector<double>& q) const {
    const std::size_t n = grid.size();
    if (profile_ && !(profile_->grid == grid)) throw std::invalid_argument("target grid mismatch");
    switch (kind_) {
        case Kind::Stationary: {
            auto uv = profile_->ubar().values();
            auto qv = profile_->qbar().values();
            u.assign(uv.begin(), uv.end());
            q.assign(qv.begin(), qv.end());
            return;
        }
        case Kind::Rarefaction: wave_->sample(grid, t + t0_, u, q); return;
        case Kind::Superposition: {
            u.resize(n);
            q.resize(n);
            const double ul = fan_->left_state();
            const double ur = fan_->right_state();
            for (std::size_t i = 0; i < n; ++i) {
                const BurgersJet j = smooth_burgers_jet(ul, ur, grid.x(i), t + t0_);
                u[i] = profile_->ubar()[i] + j.u;
                q[i] = profile_->qbar()[i] - j.u_x;
            }
            return;
        }
    }
}

Scenario make_scenario(const ScenarioConfig& cfg) {
    const double um = cfg.u_minus;
    const double up = cfg.u_plus;
    bool signs_ok = false;
    switch (cfg.case_id) {
        case 1: signs_ok = um < up && up < 0.0; break;
        case 2: signs_ok = um < up && up == 0.0; break;
        case 3: signs_ok = um < 0.0 && up > 0.0; break;
        case 4: signs_ok = um == 0.0 && up > 0.0; break;
        case 5: signs_ok = um > 0.0 && up > um; break;
        default: throw std::invalid_argument("case_id must be 1..5");
    }
    if (!signs_ok) {
        throw std::invalid_argument("u_minus, u_plus do not match the sign pattern of case " +
                                    std::to_string(cfg.case_id));
    }
    if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw std::invalid_argument("cfl must be in (0, 1]");
    if (!(cfg.t_final >= 0.0)) throw std::invalid_argument("t_final must be non-negative");
    if (!(cfg.dt_max > 0.0)) throw std::invalid_argument("dt_max must be positive");
    if (!(cfg.time_shift >= 0.0)) throw std::invalid_argument("time_shift must be non-negative");
    if (!(cfg.perturbation.width > 0.0)) throw std::invalid_argument("perturbation width must be positive");

    Grid grid(cfg.L, cfg.n_points);
    if (cfg.perturbation.amplitude != 0.0 &&
        (cfg.perturbation.support_lo() < 1.0 || cfg.perturbation.support_hi() > cfg.L - 1.0)) {
        throw std::invalid_argument("perturbation support must lie inside [1, L-1]");
    }

    auto build_profile = [&](double u_minus, double u_plus) {
        const StationaryParams p = StationaryParams::make(u_minus, u_plus);
        const PhaseTrajectory limit = stationary_limit(p, cfg.limit_tol);
        return std::make_shared<const StationaryProfile>(
            reconstruct_profile(limit, grid, cfg.trunc_tol));
    };

    std::optional<WavePattern> target;
    switch (cfg.case_id) {
        case 1:
        case 2: target = WavePattern::stationary(build_profile(um, up)); break;
        case 3:
            target = WavePattern::superposition(build_profile(um, 0.0),
                                                RarefactionFamily::make(0.0, up), cfg.time_shift);
            break;
        default:
            target = WavePattern::rarefaction(ModifiedWave(RarefactionFamily::make(um, up)),
                                              cfg.time_shift);
            break;
    }

    Scenario sc{cfg, grid, ConvexFlux::burgers(), *target};
    std::vector<double> tu, tq;
    for (double t : {0.0, cfg.t_final}) {
        sc.target.sample(grid, t, tu, tq);
        if (std::abs(tu.back() - up) > cfg.trunc_tol || std::abs(tq.back()) > cfg.trunc_tol) {
            throw DomainTooShort("target is not flat at x = L by t = " + std::to_string(t) +
                                 "; enlarge L");
        }
    }
    return sc;
}

namespace {

// u_x(0) by the one-sided second-order stencil.
double left_derivative(std::span<const double> v, double h) {
    return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
}

struct Workspace {
    std::vector<double> src, q, scratch, slope, face, rhs;
};

void heat_flux_into(std::span<const double> u, const Scenario& sc, Workspace& ws) {
    const std::size_t n = u.size();
    const double h = sc.grid.h();
    ws.src.resize(n);
    ws.q.resize(n);
    for (std::size_t i = 1; i + 1 < n; ++i) ws.src[i] = -(u[i + 1] - u[i - 1]) / (2.0 * h);
    ws.src[0] = -left_derivative(u, h);
    ws.src[n - 1] = 0.0;  // unused: q(L) = 0
    LeftBC bc = sc.outflow()
                    ? LeftBC::neumann(-sc.flux.df(sc.config.u_minus) * left_derivative(u, h))
                    : LeftBC::dirichlet(0.0);
    solve_screened_poisson_into(ws.src, h, bc, ws.q, ws.scratch);
}

// Hyperbolic flux differences into ws.rhs; returns the two boundary fluxes.
std::pair<double, double> hyperbolic_into(std::span<const double> u, const Scenario& sc,
                                          Workspace& ws) {
    const std::size_t n = u.size();
    const double h = sc.grid.h();
    ws.slope.assign(n, 0.0);
    if (sc.config.scheme == Scheme::Muscl) {
        // Ghosts: linear extrapolation on the left, zero gradient on the right.
        const double ghost_left = 2.0 * u[0] - u[1];
        ws.slope[0] = van_leer(u[0] - ghost_left, u[1] - u[0]);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            ws.slope[i] = van_leer(u[i] - u[i - 1], u[i + 1] - u[i]);
        }
        ws.slope[n - 1] = 0.0;
    }
    // face[i] is F_{i+1/2}, i = 0..n-1; the last face borders the ghost.
    ws.face.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double ul = u[i] + 0.5 * ws.slope[i];
        const double ur = u[i + 1] - 0.5 * ws.slope[i + 1];
        ws.face[i] = sc.flux.godunov(ul, ur);
    }
    ws.face[n - 1] = sc.flux.godunov(u[n - 1], u[n - 1]);
    ws.rhs.resize(n);
    ws.rhs[0] = 0.0;
    for (std::size_t i = 1; i < n; ++i) ws.rhs[i] = -(ws.face[i] - ws.face[i - 1]) / h;
    return {ws.face[0], ws.face[n - 1]};
}

// Full semi-discrete right-hand side in ws.rhs.
void full_rhs(std::span<const double> u, const Scenario& sc, Workspace& ws) {
    heat_flux_into(u, sc, ws);
    hyperbolic_into(u, sc, ws);
    const std::size_t n = u.size();
    const double h = sc.grid.h();
    const auto& q = ws.q;
    for (std::size_t i = 1; i + 1 < n; ++i) ws.rhs[i] -= (q[i + 1] - q[i - 1]) / (2.0 * h);
    ws.rhs[n - 1] -= (3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) / (2.0 * h);
}

}  // namespace

GridFunction solve_heat_flux(const GridFunction& u, const Scenario& sc) {
    Workspace ws;
    heat_flux_into(u.values(), sc, ws);
    return GridFunction(u.grid(), std::move(ws.q));
}

HyperbolicRhs hyperbolic_rhs(const GridFunction& u, const Scenario& sc) {
    Workspace ws;
    auto [fl, fr] = hyperbolic_into(u.values(), sc, ws);
    return {std::move(ws.rhs), fl, fr};
}

SimState initial_state(const Scenario& sc) {
    std::vector<double> tu, tq;
    sc.target.sample(sc.grid, 0.0, tu, tq);
    for (std::size_t i = 0; i < tu.size(); ++i) tu[i] += sc.config.perturbation(sc.grid.x(i));
    tu[0] = sc.config.u_minus;
    GridFunction u(sc.grid, std::move(tu));
    GridFunction q = solve_heat_flux(u, sc);
    return {0.0, std::move(u), std::move(q), 0};
}

double stable_dt(const SimState& state, const Scenario& sc) {
    double m = 0.0;
    for (double v : state.u.values()) m = std::max(m, std::abs(sc.flux.df(v)));
    const double cap = sc.config.dt_max;
    if (m == 0.0) return cap;
    return std::min(cap, sc.config.cfl * sc.grid.h() / m);
}

SimState step(const SimState& state, const Scenario& sc, double dt) {
    const double dt_max = stable_dt(state, sc);
    if (!(dt > 0.0) || dt > dt_max * (1.0 + 1e-12)) {
        throw CflViolation("time step violates the CFL bound", dt, dt_max);
    }
    const std::size_t n = state.u.size();
    auto u0 = state.u.values();
    Workspace ws;

    // SSP-RK2 (Heun).
    std::vector<double> u1(n), u2(n);
    full_rhs(u0, sc, ws);
    for (std::size_t i = 0; i < n; ++i) u1[i] = u0[i] + dt * ws.rhs[i];
    u1[0] = sc.config.u_minus;
    full_rhs(u1, sc, ws);
    for (std::size_t i = 0; i < n; ++i) u2[i] = 0.5 * (u0[i] + u1[i] + dt * ws.rhs[i]);
    u2[0] = sc.config.u_minus;

    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(u2[i])) {
            throw StepFailure("non-finite solution value at node " + std::to_string(i),
                              state.t + dt);
        }
    }
    heat_flux_into(u2, sc, ws);
    return {state.t + dt, GridFunction(sc.grid, std::move(u2)), GridFunction(sc.grid, ws.q),
            state.steps + 1};
}

std::pair<GridFunction, GridFunction> perturbation(const SimState& state, const Scenario& sc) {
    std::vector<double> tu, tq;
    sc.target.sample(sc.grid, state.t, tu, tq);
    const std::size_t n = tu.size();
    for (std::size_t i = 0; i < n; ++i) {
        tu[i] = state.u[i] - tu[i];
        tq[i] = state.q[i] - tq[i];
    }
    return {GridFunction(sc.grid, std::move(tu)), GridFunction(sc.grid, std::move(tq))};
}

namespace {

double l2sq(const GridFunction& f) {
    const double n = discrete_norm(f, Norm::l2());
    return n * n;
}

// Instantaneous diagnostics; the running integrals are filled by the caller.
NormSample diagnose(const SimState& state, const Scenario& sc) {
    auto [w, z] = perturbation(state, sc);
    const GridFunction wx = fd_derivative(w, 1);
    const GridFunction wxx = fd_derivative(w, 2);
    const GridFunction zx = fd_derivative(z, 1);
    const GridFunction zxx = fd_derivative(z, 2);
    const GridFunction zxxx = fd_derivative(z, 3);

    const double w0 = l2sq(w), w1 = l2sq(wx), w2 = l2sq(wxx);
    const double z0 = l2sq(z), z1 = l2sq(zx), z2 = l2sq(zxx), z3 = l2sq(zxxx);
    const double h = sc.grid.h();
    NormSample s{};
    s.t = state.t;
    s.w_l2 = std::sqrt(w0);
    s.w_h1 = std::sqrt(w0 + w1);
    s.w_h2 = std::sqrt(w0 + w1 + w2);
    s.z_h3 = std::sqrt(z0 + z1 + z2 + z3);
    s.sup_w = discrete_norm(w, Norm::sup());
    s.sup_wx = discrete_norm(wx, Norm::sup());
    s.sup_z = discrete_norm(z, Norm::sup());
    s.sup_zx = discrete_norm(zx, Norm::sup());
    s.sup_zxx = discrete_norm(zxx, Norm::sup());
    s.w0 = w[0];
    s.wx0 = wx[0];
    s.wxx0 = wxx[0];
    s.zx0 = zx[0];
    s.trace_residual = left_derivative(state.q.values(), h) +
                       sc.flux.df(sc.config.u_minus) * left_derivative(state.u.values(), h);
    // Integrands ||w_x||_1^2 and ||z||_3^2, stashed for the caller.
    s.int_wx_h1_sq = w1 + w2;
    s.int_z_h3_sq = s.z_h3 * s.z_h3;
    return s;
}

}  // namespace

RunResult run(const Scenario& sc, const StepObserver& observer) {
    std::vector<double> times;
    for (double t : sc.config.sample_times) {
        if (t > 0.0 && t < sc.config.t_final) times.push_back(t);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    times.push_back(sc.config.t_final);

    SimState state = initial_state(sc);
    if (observer) observer(state);
    NormSeries series;
    NormSample cur = diagnose(state, sc);
    double ia = cur.int_wx_h1_sq, ib = cur.int_z_h3_sq;  // integrands at the last step
    double int_a = 0.0, int_b = 0.0;
    cur.int_wx_h1_sq = 0.0;
    cur.int_z_h3_sq = 0.0;
    series.samples.push_back(cur);

    std::size_t next = 0;
    while (next < times.size() && sc.config.t_final > 0.0) {
        const double target_t = times[next];
        double dt = stable_dt(state, sc);
        bool hit = false;
        if (state.t + dt >= target_t * (1.0 - 1e-14)) {
            dt = target_t - state.t;
            hit = true;
        }
        try {
            state = step(state, sc, dt);
        } catch (const StepFailure&) {
            throw;
        } catch (const std::exception& e) {
            throw StepFailure(e.what(), state.t);
        }
        if (hit) state.t = target_t;
        if (observer) observer(state);
        NormSample s = diagnose(state, sc);
        int_a += 0.5 * dt * (ia + s.int_wx_h1_sq);
        int_b += 0.5 * dt * (ib + s.int_z_h3_sq);
        ia = s.int_wx_h1_sq;
        ib = s.int_z_h3_sq;
        if (hit) {
            s.int_wx_h1_sq = int_a;
            s.int_z_h3_sq = int_b;
            series.samples.push_back(s);
            ++next;
        }
    }
    return {std::move(series), std::move(state)};
}

void write_norm_series_csv(std::ostream& os, const NormSeries& series) {
    os << "t,w_l2,w_h1,w_h2,z_h3,sup_w,sup_wx,sup_z,sup_zx,sup_zxx,w0,wx0,wxx0,zx0,"
          "trace_residual,int_wx_h1_sq,int_z_h3_sq\n";
    char buf[64];
    for (const NormSample& s : series.samples) {
        const double row[] = {s.t,      s.w_l2,  s.w_h1,  s.w_h2,  s.z_h3,  s.sup_w,
                              s.sup_wx, s.sup_z, s.sup_zx, s.sup_zxx, s.w0,  s.wx0,
                              s.wxx0,   s.zx0,   s.trace_residual, s.int_wx_h1_sq,
                              s.int_z_h3_sq};
        bool first = true;
        for (double v : row) {
            std::snprintf(buf, sizeof buf, "%s%.17g", first ? "" : ",", v);
            os << buf;
            first = false;
        }
        os << '\n';
    }
}

}  // namespace radgas
