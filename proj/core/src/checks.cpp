#include "feedin/checks.hpp"

#include <algorithm>
#include <cmath>

#include "feedin/error.hpp"

namespace feedin {

BoundaryReport exercise_boundary_check(const Scheme& scheme, const MarketParams& market,
                                       const ProjectParams& project, const std::optional<RegulatoryParams>& reg,
                                       int grid_points) {
    require(grid_points >= 2, "at least two grid points are required");
    const InvestmentOption option(scheme, market, project, reg);
    BoundaryReport report;
    report.trigger = option.threshold().trigger;
    report.tolerance = 1e-6 * project.I;
    report.grid_points = grid_points;

    const double lo = 0.2 * report.trigger;
    const double hi = 2.0 * report.trigger;
    const double step = (hi - lo) / (grid_points - 1);
    report.grid_step = step;

    report.equality_onset = hi;
    bool equal_tail = true;
    for (int i = grid_points - 1; i >= 0; --i) {
        const double P = lo + step * i;
        const double f = option.value(P);
        const double exercise = option.exercise_value(P);
        const double gap = f - exercise;

        double shortfall = std::max(0.0, std::max(exercise, 0.0) - f - report.tolerance);
        if (P >= report.trigger) {
            shortfall = std::max(shortfall, std::abs(gap) - report.tolerance);
        }
        if (shortfall > 0.0) {
            ++report.violations;
            report.worst_violation = std::max(report.worst_violation, shortfall + report.tolerance);
        }
        if (equal_tail && std::abs(gap) <= report.tolerance) {
            report.equality_onset = P;
        } else {
            equal_tail = false;
        }
    }
    if (report.equality_onset < report.trigger - step) {
        ++report.violations;
        report.worst_violation = std::max(report.worst_violation, report.tolerance);
    }
    return report;
}

std::string_view to_string(StaticsParam param) noexcept {
    switch (param) {
        case StaticsParam::Lambda: return "lambda";
        case StaticsParam::Omega: return "omega";
        case StaticsParam::OmegaC: return "omega_C";
        case StaticsParam::F: return "F";
        case StaticsParam::Sigma: return "sigma";
    }
    return "unknown";
}

StaticsParam parse_statics_param(std::string_view text) {
    for (auto p : {StaticsParam::Lambda, StaticsParam::Omega, StaticsParam::OmegaC, StaticsParam::F,
                   StaticsParam::Sigma}) {
        if (text == to_string(p)) {
            return p;
        }
    }
    fail(ErrorKind::ValidationError, "unknown comparative-statics parameter '" + std::string(text) + "'");
}

std::string_view to_string(Monotonicity verdict) noexcept {
    switch (verdict) {
        case Monotonicity::StrictlyIncreasing: return "strictly-increasing";
        case Monotonicity::StrictlyDecreasing: return "strictly-decreasing";
        case Monotonicity::NonMonotone: return "non-monotone";
        case Monotonicity::Failed: return "failed";
    }
    return "unknown";
}

StaticsReport comparative_statics_check(const Scheme& scheme, const MarketParams& market,
                                        const ProjectParams& project, const std::optional<RegulatoryParams>& reg,
                                        StaticsParam param, std::span<const double> grid) {
    StaticsReport report{param, {grid.begin(), grid.end()}, {}, {}, Monotonicity::Failed, {}};
    const bool regulatory = param == StaticsParam::Lambda || param == StaticsParam::Omega ||
                            param == StaticsParam::OmegaC;
    for (double x : grid) {
        Scheme s = scheme;
        MarketParams m = market;
        std::optional<RegulatoryParams> g = reg;
        if (regulatory && !g) {
            g = RegulatoryParams{};
        }
        switch (param) {
            case StaticsParam::Lambda: g->lambda = x; break;
            case StaticsParam::Omega: g->omega = x; break;
            case StaticsParam::OmegaC: g->omega_C = x; break;
            case StaticsParam::Sigma: m.sigma = x; break;
            case StaticsParam::F:
                std::visit([x](auto& c) { c.F = x; }, s);
                break;
        }
        try {
            report.thresholds.push_back(solve_threshold(s, m, project, g).trigger);
        } catch (const Error& e) {
            report.error = std::string(to_string(e.kind())) + " at " + std::string(to_string(param)) + "=" +
                           std::to_string(x) + ": " + e.what();
            return report;
        }
    }
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < report.thresholds.size(); ++i) {
        const double d = report.thresholds[i] - report.thresholds[i - 1];
        report.differences.push_back(d);
        up = up && d > 0.0;
        down = down && d < 0.0;
    }
    report.verdict = up ? Monotonicity::StrictlyIncreasing
                        : (down ? Monotonicity::StrictlyDecreasing : Monotonicity::NonMonotone);
    return report;
}

}  // namespace feedin
