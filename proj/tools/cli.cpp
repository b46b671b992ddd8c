#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "radgas/error.hpp"
#include "radgas/ibvp.hpp"
#include "radgas/stationary.hpp"
#include "radgas/verify.hpp"

namespace radgas::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Config and IO problems; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    if (!in) throw UsageError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path prepare_out_dir(const std::string& dir) {
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p)) throw UsageError("cannot create output directory " + dir);
    return p;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream os(p);
    if (!os) throw UsageError("cannot write " + p.string());
    return os;
}

ScenarioConfig load_config(const std::string& path, const std::vector<std::string>& sets) {
    ScenarioConfig cfg;
    try {
        cfg = parse_config(read_file(path));
        for (const std::string& s : sets) apply_override(cfg, s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

json checks_json(const std::vector<Check>& checks) {
    json a = json::array();
    for (const Check& c : checks) {
        a.push_back({{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"limit", c.limit},
                     {"note", c.note}});
    }
    return a;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Scenario build_scenario(const ScenarioConfig& cfg) {
    try {
        return make_scenario(cfg);
    } catch (const std::invalid_argument& e) {
        // DomainTooShort and sign mismatches are configuration problems.
        throw UsageError(e.what());
    }
}

struct RunOutput {
    json summary;
    bool pass;
};

RunOutput run_one(const ScenarioConfig& cfg, const fs::path& csv_path) {
    const Scenario sc = build_scenario(cfg);
    const RunResult res = run(sc);
    {
        std::ofstream os = open_out(csv_path);
        write_norm_series_csv(os, res.series);
    }
    const std::vector<Check> checks = ibvp_run_checks(sc, res.series);
    const NormSample& a = res.series.samples.front();
    const NormSample& b = res.series.samples.back();
    json s;
    s["config"] = json::parse(config_to_json(cfg));
    s["csv"] = csv_path.filename().string();
    s["steps"] = res.final_state.steps;
    s["t_final"] = b.t;
    s["sup_w_initial"] = a.sup_w;
    s["sup_w_final"] = b.sup_w;
    s["sup_w_decay_ratio"] = a.sup_w > 0.0 ? b.sup_w / a.sup_w : 0.0;
    // ||w(t)||_2^2 + int (||w_x||_1^2 + ||z||_3^2), maximized over the samples.
    double e_max = 0.0;
    for (const NormSample& x : res.series.samples) {
        e_max = std::max(e_max, x.w_h2 * x.w_h2 + x.int_wx_h1_sq + x.int_z_h3_sq);
    }
    s["energy_max"] = e_max;
    s["w0_h2_sq"] = a.w_h2 * a.w_h2;
    s["checks"] = checks_json(checks);
    s["passed"] = all_pass(checks);
    return {s, all_pass(checks)};
}

int cmd_run(const std::string& config, const std::string& out_dir,
            const std::vector<std::string>& sets, std::ostream& out) {
    const ScenarioConfig cfg = load_config(config, sets);
    const fs::path dir = prepare_out_dir(out_dir);
    const std::string stem = fs::path(config).stem().string();
    RunOutput r = run_one(cfg, dir / (stem + ".csv"));
    {
        std::ofstream os = open_out(dir / (stem + "_summary.json"));
        os << r.summary.dump(2) << '\n';
    }
    out << "case " << cfg.case_id << ": sup|w| ratio " << r.summary["sup_w_decay_ratio"].get<double>()
        << ", " << (r.pass ? "all checks pass" : "checks failed") << '\n';
    out << "wrote " << (dir / (stem + ".csv")).string() << " and "
        << (dir / (stem + "_summary.json")).string() << '\n';
    return r.pass ? kOk : kCheckFailed;
}

int cmd_verify(const std::string& which, const std::string& out_dir, std::ostream& out) {
    SuiteReport rep;
    if (which == "verify-elliptic") rep = verify_elliptic();
    else if (which == "verify-rarefaction") rep = verify_rarefaction();
    else rep = verify_stationary();
    const fs::path dir = prepare_out_dir(out_dir);
    const fs::path path = dir / (which + ".json");
    {
        std::ofstream os = open_out(path);
        os << rep.to_json() << '\n';
    }
    for (const Check& c : rep.checks) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << c.value
            << " limit=" << c.limit << '\n';
    }
    out << "wrote " << path.string() << '\n';
    return rep.passed() ? kOk : kCheckFailed;
}

int cmd_sweep(const std::string& config, const std::string& out_dir,
              const std::vector<std::string>& sets, const std::vector<double>& amplitudes,
              std::ostream& out) {
    const ScenarioConfig base = load_config(config, sets);
    const fs::path dir = prepare_out_dir(out_dir);
    const std::string stem = fs::path(config).stem().string();
    build_scenario(base);  // surface configuration errors before spawning workers

    const std::size_t n = amplitudes.size();
    std::vector<json> results(n);
    std::vector<std::string> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            ScenarioConfig cfg = base;
            cfg.perturbation.amplitude = amplitudes[i];
            char tag[32];
            std::snprintf(tag, sizeof tag, "_a%g", amplitudes[i]);
            try {
                results[i] = run_one(cfg, dir / (stem + tag + ".csv")).summary;
                results[i]["amplitude"] = amplitudes[i];
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(sweep_threads(), static_cast<unsigned>(n)));
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < nt; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    for (const std::string& e : errors) {
        if (!e.empty()) throw std::runtime_error(e);
    }

    // Energy ratio E / (||w0||_2^2 + delta); the constant is fitted on all but the
    // largest amplitude and must hold for it.
    const double delta = std::abs(base.u_plus - base.u_minus);
    std::vector<double> ratios;
    for (json& r : results) {
        ratios.push_back(r["energy_max"].get<double>() / (r["w0_h2_sq"].get<double>() + delta));
        r["energy_ratio"] = ratios.back();
    }
    json summary;
    summary["config"] = json::parse(config_to_json(base));
    summary["runs"] = results;
    bool pass = true;
    if (n >= 2) {
        const double C = kFreezeMargin *
                         *std::max_element(ratios.begin(), ratios.end() - 1);
        const bool ok = ratios.back() <= C;
        summary["energy_constant"] = C;
        summary["energy_check"] = {{"value", ratios.back()}, {"limit", C}, {"pass", ok}};
        pass = ok;
    }
    {
        std::ofstream os = open_out(dir / (stem + "_sweep.json"));
        os << summary.dump(2) << '\n';
    }
    for (std::size_t i = 0; i < n; ++i) {
        out << "amplitude " << amplitudes[i] << ": sup|w| ratio "
            << results[i]["sup_w_decay_ratio"].get<double>() << ", energy ratio " << ratios[i]
            << (results[i]["passed"].get<bool>() ? "" : " (run checks failed)") << '\n';
    }
    out << (pass ? "energy bound holds" : "energy bound violated") << '\n';
    return pass ? kOk : kCheckFailed;
}

}  // namespace

std::vector<std::string> coeff_table(int K) {
    const ExpansionCoeffs ec = expansion_coeffs(K);
    std::vector<std::string> lines;
    for (int k = 1; k <= K; ++k) {
        const std::string sign = k % 2 == 1 ? "" : "-";
        lines.push_back("a" + std::to_string(k) + " = " + sign +
                        ec.c_exact[static_cast<std::size_t>(k - 1)] + "·√2");
    }
    return lines;
}

unsigned sweep_threads() {
    if (const char* env = std::getenv("RADGAS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical lab for the radiating-gas model on the half line", "radgas"};
    app.require_subcommand(1);

    std::string config, out_dir = ".";
    std::vector<std::string> sets;
    int K = 5;
    std::vector<double> amplitudes{0.005, 0.02, 0.05};

    auto* run = app.add_subcommand("run", "Run one scenario and write CSV + summary JSON");
    run->add_option("config", config, "Scenario JSON")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--set", sets, "Override key=value (repeatable)");

    auto* sweep = app.add_subcommand("sweep", "Run a perturbation-amplitude ladder");
    sweep->add_option("config", config, "Scenario JSON")->required();
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--set", sets, "Override key=value (repeatable)");
    sweep->add_option("--amplitudes", amplitudes, "Amplitude ladder")->delimiter(',');

    std::vector<CLI::App*> verifies;
    for (const char* name : {"verify-elliptic", "verify-rarefaction", "verify-stationary"}) {
        auto* v = app.add_subcommand(name, "Run the module property suite and write a JSON report");
        v->add_option("--out", out_dir, "Output directory");
        verifies.push_back(v);
    }

    auto* coeffs = app.add_subcommand("coeffs", "Print the expansion coefficients a_1..a_K");
    coeffs->add_option("K", K, "Highest order (1..30)")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return kUsageError;
    }

    try {
        if (*run) return cmd_run(config, out_dir, sets, out);
        if (*sweep) return cmd_sweep(config, out_dir, sets, amplitudes, out);
        if (*coeffs) {
            for (const std::string& line : coeff_table(K)) out << line << '\n';
            return kOk;
        }
        for (auto* v : verifies) {
            if (*v) return cmd_verify(v->get_name(), out_dir, out);
        }
    } catch (const UsageError& e) {
        emit_error(err, "config", e.what());
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        emit_error(err, "config", e.what());
        return kUsageError;
    } catch (const StepFailure& e) {
        emit_error(err, "step_failure", e.what() + std::string(" at t = ") + std::to_string(e.t()));
        return kCheckFailed;
    } catch (const std::exception& e) {
        emit_error(err, "numerical", e.what());
        return kCheckFailed;
    }
    return kUsageError;
}

}  // namespace radgas::cli
