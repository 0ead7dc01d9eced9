#include "feedin/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <thread>

#include "feedin/error.hpp"
#include "feedin/root_finding.hpp"

namespace feedin {

namespace {

std::string fmt(const char* pattern, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

double threshold_or_zero(const Scenario& s, SchemeKind kind) {
    try {
        return solve_threshold(s.contract(kind), s.market, s.project, s.reg()).trigger;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SubsidyExceedsCost) {
            return 0.0;
        }
        throw;
    }
}

SweepRow free_market_row(const Scenario& s) {
    SweepRow row;
    row.scheme = std::string(kFreeMarketLabel);
    try {
        const auto result = threshold_fixed_premium(FixedPremium{0.0, s.T}, s.market, s.project);
        row.threshold = result.trigger;
        row.branch = std::string(to_string(result.branch));
        row.status = "ok";
    } catch (const Error& e) {
        row.status = std::string(to_string(e.kind()));
    }
    return row;
}

}  // namespace

SweepRow solve_row(const Scenario& s, SchemeKind kind) {
    SweepRow row;
    row.scheme = std::string(label(kind));
    try {
        const auto result = solve_threshold(s.contract(kind), s.market, s.project, s.reg());
        row.threshold = result.trigger;
        row.branch = std::string(to_string(result.branch));
        row.status = "ok";
        row.vm_residual = result.vm_residual;
        row.sp_residual = result.sp_residual;
    } catch (const Error& e) {
        row.status = std::string(to_string(e.kind()));
        row.threshold = e.kind() == ErrorKind::SubsidyExceedsCost ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    }
    return row;
}

std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepOptions& options) {
    if (!scenario.sweep) {
        fail(ErrorKind::ValidationError, "scenario has no sweep");
    }
    const auto& spec = *scenario.sweep;
    const std::size_t per_point = options.schemes.size() + (options.free_market ? 1 : 0);
    const auto n = static_cast<std::size_t>(spec.n_points);
    std::vector<SweepRow> rows(n * per_point);

    auto fill = [&](std::size_t i) {
        const double x = i + 1 == n ? spec.hi : spec.lo + (spec.hi - spec.lo) * static_cast<double>(i) / (n - 1);
        Scenario s = scenario;
        set_parameter(s, spec.param, x);
        for (std::size_t k = 0; k < per_point; ++k) {
            SweepRow row = k < options.schemes.size() ? solve_row(s, options.schemes[k]) : free_market_row(s);
            row.x_param = spec.param;
            row.x_value = x;
            rows[i * per_point + k] = std::move(row);
        }
    };

    const unsigned threads = std::max(1U, std::min<unsigned>(options.threads, static_cast<unsigned>(n)));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fill(i);
        }
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < n; i += threads) {
                    fill(i);
                }
            });
        }
    }
    return rows;
}

double ok_fraction(const std::vector<SweepRow>& rows) {
    std::size_t total = 0;
    std::size_t ok = 0;
    for (const auto& row : rows) {
        if (row.scheme == kFreeMarketLabel) {
            continue;
        }
        ++total;
        ok += row.ok() ? 1 : 0;
    }
    return total == 0 ? 1.0 : static_cast<double>(ok) / static_cast<double>(total);
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "x_param,x_value,scheme,threshold,branch,status,vm_residual,sp_residual\n";
    for (const auto& row : rows) {
        const bool has_threshold = std::isfinite(row.threshold);
        out << row.x_param << ',' << fmt("%.10g", row.x_value) << ',' << row.scheme << ','
            << (has_threshold ? fmt("%.10g", row.threshold) : "") << ',' << row.branch << ',' << row.status << ','
            << (row.ok() ? fmt("%.3e", row.vm_residual) : "") << ','
            << (row.ok() ? fmt("%.3e", row.sp_residual) : "") << '\n';
    }
}

void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& title) {
    constexpr double W = 720;
    constexpr double H = 440;
    constexpr double left = 70;
    constexpr double right = 150;
    constexpr double top = 40;
    constexpr double bottom = 50;
    static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#7f7f7f", "#ff7f0e"};

    // Keep series in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<double, double>>> series;
    double x0 = std::numeric_limits<double>::infinity();
    double x1 = -x0;
    double y0 = x0;
    double y1 = -x0;
    for (const auto& row : rows) {
        if (!row.ok()) {
            continue;
        }
        if (!series.contains(row.scheme)) {
            order.push_back(row.scheme);
        }
        series[row.scheme].emplace_back(row.x_value, row.threshold);
        x0 = std::min(x0, row.x_value);
        x1 = std::max(x1, row.x_value);
        y0 = std::min(y0, row.threshold);
        y1 = std::max(y1, row.threshold);
    }
    if (order.empty()) {
        x0 = y0 = 0.0;
        x1 = y1 = 1.0;
    }
    if (x1 <= x0) {
        x1 = x0 + 1.0;
    }
    if (y1 <= y0) {
        y1 = y0 + 1.0;
    }
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
    auto sy = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };

    const std::string x_name = rows.empty() ? "x" : rows.front().x_param;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
        << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = x0 + (x1 - x0) * i / 4.0;
        const double yv = y0 + (y1 - y0) * i / 4.0;
        out << "<text x=\"" << sx(xv) << "\" y=\"" << H - bottom + 16 << "\" text-anchor=\"middle\">"
            << fmt("%.4g", xv) << "</text>\n";
        out << "<text x=\"" << left - 6 << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << fmt("%.4g", yv)
            << "</text>\n";
    }
    out << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << x_name
        << "</text>\n";
    out << "<text x=\"16\" y=\"" << (top + H - bottom) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << (top + H - bottom) / 2 << ")\">threshold</text>\n";

    for (std::size_t k = 0; k < order.size(); ++k) {
        const char* color = colors[k % std::size(colors)];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[order[k]]) {
            out << fmt("%.2f", sx(x)) << ',' << fmt("%.2f", sy(y)) << ' ';
        }
        out << "\"/>\n";
        const double ly = top + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << W - right + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - right + 32 << "\" y2=\"" << ly
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << W - right + 38 << "\" y=\"" << ly + 4 << "\">" << order[k] << "</text>\n";
    }
    out << "</svg>\n";
}

double subsidy_bound(const Scenario& s) {
    const double annuity = -std::expm1(-s.market.r * s.T) / s.market.r;
    return annuity > 0.0 ? s.project.I / (s.project.Q * annuity) : std::numeric_limits<double>::infinity();
}

double invert_tariff(const Scenario& scenario, SchemeKind kind, double target) {
    require(target > 0.0 && std::isfinite(target), "target trigger must be positive");
    double hi = subsidy_bound(scenario);
    if (!std::isfinite(hi)) {
        hi = 1000.0 * free_market_threshold(scenario.market, scenario.project);
    } else {
        hi *= 1.0 - 1e-6;  // keeps the trigger well above the 1e-6 bracket floor
    }
    if (kind == SchemeKind::Collar) {
        hi = std::min(hi, scenario.C);
    }

    Scenario s = scenario;
    auto gap = [&s, kind, target](double F) {
        s.F = F;
        return threshold_or_zero(s, kind) - target;
    };
    const double g_lo = gap(0.0);
    if (std::abs(g_lo) <= 1e-12 * target) {
        return 0.0;
    }
    const double g_hi = gap(hi);
    if (g_lo < 0.0 || g_hi > 0.0) {
        fail(ErrorKind::NoRoot, "target trigger " + fmt("%.6g", target) + " is not reachable for F in [0, " +
                                    fmt("%.6g", hi) + "]");
    }
    return refine_root(gap, 0.0, hi, g_lo, g_hi, BranchSolverOptions{});
}

}  // namespace feedin
