// fitctl: value, threshold, sweep, invert and verify on a scenario file.
//
// Exit codes: 0 success, 2 configuration error, 3 solver failure on a
// single-point command (or a sweep with fewer than 90% ok rows),
// 4 verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "feedin/checks.hpp"
#include "feedin/error.hpp"
#include "feedin/monte_carlo.hpp"
#include "feedin/scenario.hpp"
#include "feedin/sweep.hpp"
#include "feedin/thresholds.hpp"
#include "feedin/valuation.hpp"

namespace {

using namespace feedin;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerify = 4;

struct Globals {
    std::string config;
    std::optional<bool> ru;
    std::string schemes;
    std::string out;
    std::string svg;
    std::uint64_t seed = SimConfig{}.seed;
    unsigned threads = 1;
};

std::vector<SchemeKind> parse_schemes(const std::string& list) {
    std::vector<SchemeKind> kinds;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            kinds.push_back(parse_scheme_kind(item));
        }
    }
    if (kinds.empty()) {
        fail(ErrorKind::ValidationError, "--schemes lists no scheme");
    }
    return kinds;
}

Scenario scenario_from(const Globals& g) {
    Scenario s = g.config.empty() ? Scenario{} : load_scenario(g.config);
    if (g.ru) {
        s.ru = *g.ru;
    }
    return s;
}

// Single-point commands act on --schemes when given, else on the scenario's scheme.
std::vector<SchemeKind> point_schemes(const Globals& g, const Scenario& s) {
    return g.schemes.empty() ? std::vector<SchemeKind>{s.scheme} : parse_schemes(g.schemes);
}

std::string num(double v, const char* pattern = "%.10g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

int cmd_value(const Globals& g, std::optional<double> price) {
    Scenario s = scenario_from(g);
    if (price) {
        s.P = *price;
        validate(s);
    }
    int rc = 0;
    for (auto kind : point_schemes(g, s)) {
        const Scheme contract = s.contract(kind);
        const auto v = project_value(contract, s.P, s.market, s.project);
        std::cout << "scheme: " << label(kind) << "\n"
                  << "price: " << num(s.P) << "\n"
                  << "project value: " << num(v.value, "%.2f") << "\n"
                  << "region: " << to_string(v.region) << "\n";
        try {
            const InvestmentOption option(contract, s.market, s.project, s.reg());
            std::cout << "option value: " << num(option.value(s.P), "%.2f") << "\n"
                      << "trigger: " << num(option.threshold().trigger) << "\n"
                      << "invest now: " << (s.P >= option.threshold().trigger ? "yes" : "no") << "\n";
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SubsidyExceedsCost) {
                std::cout << "option value: " << num(v.value - s.project.I, "%.2f") << "\n"
                          << "invest now: yes (" << e.what() << ")\n";
            } else {
                std::cout << "option: " << to_string(e.kind()) << ": " << e.what() << "\n";
                rc = kExitSolver;
            }
        }
        std::cout << "\n";
    }
    return rc;
}

int cmd_threshold(const Globals& g) {
    const Scenario s = scenario_from(g);
    int rc = 0;
    for (auto kind : point_schemes(g, s)) {
        const auto row = solve_row(s, kind);
        std::cout << "scheme: " << row.scheme << "\n"
                  << "regulatory risk: " << (s.ru ? "on" : "off") << "\n"
                  << "status: " << row.status << "\n";
        if (row.ok()) {
            std::cout << "trigger: " << num(row.threshold) << "\n"
                      << "branch: " << row.branch << "\n"
                      << "value-matching residual: " << num(row.vm_residual, "%.3e") << "\n"
                      << "smooth-pasting residual: " << num(row.sp_residual, "%.3e") << "\n";
        } else {
            rc = kExitSolver;
        }
        std::cout << "\n";
    }
    return rc;
}

struct SweepArgs {
    std::string param;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<int> n;
};

int cmd_sweep(const Globals& g, const SweepArgs& a) {
    Scenario s = scenario_from(g);
    if (!a.param.empty() || a.lo || a.hi || a.n) {
        SweepSpec spec = s.sweep.value_or(SweepSpec{});
        if (!a.param.empty()) {
            spec.param = a.param;
        }
        spec.lo = a.lo.value_or(spec.lo);
        spec.hi = a.hi.value_or(spec.hi);
        spec.n_points = a.n.value_or(spec.n_points);
        s.sweep = spec;
        validate(s);
    }
    if (!s.sweep) {
        fail(ErrorKind::ValidationError, "no sweep given; set sweep_* in the config or pass --param/--lo/--hi/--n");
    }
    SweepOptions options;
    if (!g.schemes.empty()) {
        options.schemes = parse_schemes(g.schemes);
    }
    options.threads = g.threads;
    const auto rows = run_sweep(s, options);

    if (g.out.empty() || g.out == "-") {
        write_csv(std::cout, rows);
    } else {
        std::ofstream out(g.out, std::ios::binary);
        if (!out) {
            fail(ErrorKind::InvalidConfig, "cannot write " + g.out);
        }
        write_csv(out, rows);
    }
    if (!g.svg.empty()) {
        std::ofstream svg(g.svg, std::ios::binary);
        if (!svg) {
            fail(ErrorKind::InvalidConfig, "cannot write " + g.svg);
        }
        write_svg(svg, rows, std::string("threshold vs ") + s.sweep->param + (s.ru ? " (regulatory risk)" : ""));
    }
    const double share = ok_fraction(rows);
    std::cerr << "rows ok: " << num(100.0 * share, "%.1f") << "%\n";
    return share >= 0.9 ? 0 : kExitSolver;
}

int cmd_invert(const Globals& g, std::optional<double> target) {
    const Scenario s = scenario_from(g);
    const double goal = target.value_or(free_market_threshold(s.market, s.project));
    std::cout << "target trigger: " << num(goal) << "\n";
    int rc = 0;
    for (auto kind : point_schemes(g, s)) {
        try {
            const double F = invert_tariff(s, kind, goal);
            std::cout << label(kind) << ": F = " << num(F) << "\n";
        } catch (const Error& e) {
            std::cout << label(kind) << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
            rc = kExitSolver;
        }
    }
    return rc;
}

int cmd_verify(const Globals& g, const SimConfig& base, std::optional<double> price) {
    Scenario s = scenario_from(g);
    if (price) {
        s.P = *price;
        validate(s);
    }
    SimConfig cfg = base;
    cfg.seed = g.seed;
    cfg.threads = g.threads;
    validate(cfg);

    bool ok = true;
    for (auto kind : point_schemes(g, s)) {
        const Scheme contract = s.contract(kind);
        const double analytic = project_value(contract, s.P, s.market, s.project).value;
        const auto mc = mc_project_value(contract, s.P, s.market, s.project, cfg);
        const double z = mc.std_error > 0.0 ? (mc.mean - analytic) / mc.std_error : 0.0;
        const bool mc_ok = std::abs(z) <= 3.0 || std::abs(mc.mean - analytic) <= 1e-9 * std::abs(analytic);
        std::cout << label(kind) << ": analytic " << num(analytic, "%.2f") << ", monte carlo " << num(mc.mean, "%.2f")
                  << " +/- " << num(mc.std_error, "%.2f") << " (z = " << num(z, "%.2f") << ") "
                  << (mc_ok ? "PASS" : "FAIL") << "\n";
        ok = ok && mc_ok;
        try {
            const auto report = exercise_boundary_check(contract, s.market, s.project, s.reg());
            std::cout << label(kind) << ": exercise boundary at " << num(report.trigger) << ", "
                      << report.violations << " violations, worst " << num(report.worst_violation, "%.3g")
                      << ", equality from " << num(report.equality_onset) << " "
                      << (report.passed() ? "PASS" : "FAIL") << "\n";
            ok = ok && report.passed();
        } catch (const Error& e) {
            std::cout << label(kind) << ": exercise boundary " << to_string(e.kind()) << ": " << e.what()
                      << (e.kind() == ErrorKind::SubsidyExceedsCost ? " SKIP" : " FAIL") << "\n";
            ok = ok && e.kind() == ErrorKind::SubsidyExceedsCost;
        }
    }
    return ok ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feed-in tariff valuation and investment thresholds"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--config", g.config, "Scenario file (key = value lines or flat JSON)");
    app.add_flag("--ru,!--no-ru", g.ru, "Switch regulatory risk on or off (default from the scenario)");
    app.add_option("--schemes", g.schemes, "Comma-separated subset of fixed,premium,floor,collar");
    app.add_option("--out", g.out, "CSV output path (sweep; default stdout)");
    app.add_option("--svg", g.svg, "SVG chart output path (sweep)");
    app.add_option("--seed", g.seed, "Monte Carlo seed (verify)");
    app.add_option("--threads", g.threads, "Worker threads for sweeps and simulation")->check(CLI::PositiveNumber);

    std::optional<double> price;
    auto* value = app.add_subcommand("value", "Project value and option value at a price");
    value->add_option("--price,-P", price, "Electricity price (default: scenario P)");

    auto* threshold = app.add_subcommand("threshold", "Investment trigger");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "Thresholds over a parameter grid, as CSV");
    sweep->add_option("--param", sweep_args.param, "lambda, omega, omega_C, F, C, sigma, T or P");
    sweep->add_option("--lo", sweep_args.lo, "Grid start");
    sweep->add_option("--hi", sweep_args.hi, "Grid end");
    sweep->add_option("--n", sweep_args.n, "Grid points");

    std::optional<double> target;
    auto* invert = app.add_subcommand("invert", "Tariff that yields a target trigger");
    invert->add_option("--target", target, "Target trigger (default: free-market trigger)");

    SimConfig sim;
    auto* verify = app.add_subcommand("verify", "Monte Carlo and exercise-boundary checks");
    verify->add_option("--paths", sim.n_paths, "Simulated paths");
    verify->add_option("--steps-per-year", sim.steps_per_year, "Time steps per year");
    verify->add_flag("--antithetic", sim.antithetic, "Antithetic pairs");
    verify->add_option("--price,-P", price, "Electricity price (default: scenario P)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*value) {
            return cmd_value(g, price);
        }
        if (*threshold) {
            return cmd_threshold(g);
        }
        if (*sweep) {
            return cmd_sweep(g, sweep_args);
        }
        if (*invert) {
            return cmd_invert(g, target);
        }
        if (*verify) {
            return cmd_verify(g, sim, price);
        }
    } catch (const Error& e) {
        std::cerr << "fitctl: " << to_string(e.kind()) << ": " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::NoRoot:
            case ErrorKind::MultipleRoots:
            case ErrorKind::SubsidyExceedsCost: return kExitSolver;
            default: return kExitConfig;
        }
    }
    return 0;
}
