// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "radgas/ibvp.hpp"
#include "radgas/verify.hpp"

using namespace radgas;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    int id;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_limit = 0.0;  // 0: none
};

void append(std::vector<Check>& dst, const std::vector<Check>& src, const std::string& prefix = "") {
    for (Check c : src) {
        c.name = prefix + c.name;
        dst.push_back(std::move(c));
    }
}

Criterion timed(int id, std::string title, double limit,
                const std::function<std::vector<Check>()>& body) {
    Criterion c{id, std::move(title), {}, 0.0, limit};
    const auto t0 = Clock::now();
    try {
        c.checks = body();
    } catch (const std::exception& e) {
        c.checks.push_back({"exception", false, 0.0, 0.0, e.what()});
    }
    c.seconds = seconds_since(t0);
    return c;
}

ScenarioConfig load(const std::string& name) {
    std::ifstream is(std::string(RADGAS_CONFIG_DIR) + "/" + name);
    if (!is) throw std::runtime_error("cannot open config " + name);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

struct CaseRun {
    std::string name;
    std::vector<Check> checks;
    double seconds = 0.0;
    std::string error;
};

CaseRun run_case(const std::string& file) {
    CaseRun r{file, {}, 0.0, {}};
    const auto t0 = Clock::now();
    try {
        const Scenario sc = make_scenario(load(file));
        const RunResult res = run(sc);
        r.checks = ibvp_run_checks(sc, res.series);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    r.seconds = seconds_since(t0);
    return r;
}

bool is_boundary_check(const Check& c) {
    return c.name == "boundary_w0" || c.name == "outflow_trace";
}

bool report(const Criterion& c) {
    bool pass = !c.checks.empty();
    for (const Check& k : c.checks) pass = pass && k.pass;
    const bool in_time = c.time_limit <= 0.0 || c.seconds < c.time_limit;
    pass = pass && in_time;
    std::printf("%s %2d %s (%.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.seconds);
    for (const Check& k : c.checks) {
        if (!k.pass) {
            std::printf("       failed %s value=%.6g limit=%.6g %s\n", k.name.c_str(), k.value, k.limit,
                        k.note.c_str());
        }
    }
    if (!in_time) std::printf("       over the time limit of %.3g s\n", c.time_limit);
    return pass;
}

}  // namespace

int main() {
    std::vector<Criterion> crit;

    // The long runs go first in the background.
    const std::vector<std::string> cases{"case1.json", "case2.json", "case3.json", "case5.json"};
    std::vector<std::future<CaseRun>> futures;
    for (const auto& f : cases) futures.push_back(std::async(std::launch::async, run_case, f));

    crit.push_back(timed(1, "coefficient table", 0.0, [] { return stationary_coeff_checks(); }));
    crit.push_back(timed(2, "phase-plane bounds and k-ladder", 1.0, [] { return stationary_ladder_checks(); }));
    crit.push_back(timed(3, "expansion brackets", 5.0, [] { return stationary_expansion_checks(); }));
    crit.push_back(timed(4, "degenerate decay bands", 10.0, [] { return stationary_degenerate_band_checks(); }));
    crit.push_back(timed(5, "non-degenerate bands", 10.0, [] { return stationary_nondegenerate_checks(); }));
    crit.push_back(timed(6, "elliptic optimality", 0.0, [] {
        std::vector<Check> v;
        append(v, elliptic_witness_checks());
        append(v, elliptic_gns_checks());
        return v;
    }));
    crit.push_back(timed(7, "manufactured elliptic convergence", 0.0,
                         [] { return elliptic_convergence_checks(); }));
    crit.push_back(timed(8, "rarefaction properties and residual envelopes", 0.0, [] {
        std::vector<Check> v;
        append(v, rarefaction_property_checks());
        append(v, rarefaction_residual_checks());
        return v;
    }));
    crit.push_back(timed(9, "steady preservation, case 2", 0.0, [] {
        const Scenario sc = make_scenario(load("case2_steady.json"));
        double drift = 0.0;
        std::size_t steps = 0;
        run(sc, [&](const SimState& s) {
            drift = std::max(drift, discrete_norm(perturbation(s, sc).first, Norm::sup()));
            ++steps;
        });
        const double limit = 10.0 * sc.grid.h() * sc.grid.h();
        return std::vector<Check>{{"sup_drift", drift < limit, drift, limit,
                                   "over t in [0, " + std::to_string(sc.config.t_final) + "], " +
                                       std::to_string(steps) + " steps"}};
    }));

    std::vector<CaseRun> runs;
    for (auto& f : futures) runs.push_back(f.get());

    Criterion c10{10, "asymptotic stability, cases 1 2 3 5", {}, 0.0, 0.0};
    Criterion c11{11, "boundary identities", {}, 0.0, 0.0};
    for (const CaseRun& r : runs) {
        c10.seconds = std::max(c10.seconds, r.seconds);
        const std::string prefix = r.name.substr(0, r.name.find('.')) + ".";
        if (!r.error.empty()) {
            c10.checks.push_back({prefix + "run", false, 0.0, 0.0, r.error});
            c11.checks.push_back({prefix + "run", false, 0.0, 0.0, r.error});
            continue;
        }
        for (const Check& k : r.checks) {
            Check named = k;
            named.name = prefix + k.name;
            (is_boundary_check(k) ? c11 : c10).checks.push_back(named);
        }
    }
    c11.seconds = c10.seconds;
    crit.push_back(c10);
    crit.push_back(c11);

    bool all = true;
    for (const Criterion& c : crit) all = report(c) && all;
    return all ? 0 : 1;
}
