#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "feedin/scenario.hpp"

namespace feedin {

/// Label of the reference series: premium threshold at F = 0.
inline constexpr std::string_view kFreeMarketLabel = "free-market";

struct SweepRow {
    std::string x_param;
    double x_value = 0.0;
    std::string scheme;
    // 0 when the subsidy alone covers the cost (investment is immediate).
    double threshold = 0.0;
    std::string branch;
    // ok | no-root | multiple-roots | subsidy-exceeds-cost | invalid-parameters
    std::string status;
    double vm_residual = 0.0;
    double sp_residual = 0.0;

    [[nodiscard]] bool ok() const noexcept { return status == "ok"; }
};

struct SweepOptions {
    std::vector<SchemeKind> schemes = {SchemeKind::FixedPrice, SchemeKind::FixedPremium, SchemeKind::Floor,
                                       SchemeKind::Collar};
    bool free_market = true;
    unsigned threads = 1;
};

/// One row per (grid value, scheme) plus the free-market series, ordered by
/// grid value then scheme. A failed solve yields a status row.
[[nodiscard]] std::vector<SweepRow> run_sweep(const Scenario& scenario, const SweepOptions& options = {});

/// Single solve reported in sweep-row form (x_param empty).
[[nodiscard]] SweepRow solve_row(const Scenario& scenario, SchemeKind kind);

/// Share of ok rows, ignoring the free-market series.
[[nodiscard]] double ok_fraction(const std::vector<SweepRow>& rows);

/// Header: x_param,x_value,scheme,threshold,branch,status,vm_residual,sp_residual
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Plain line chart of threshold against the swept value, one polyline per
/// scheme. Rows without an ok status are skipped.
void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& title);

/// Tariff at which the scheme's threshold equals target. Searches
/// F in [0, min(F_max, C)], where F_max is the tariff whose subsidy value
/// equals I. Throws NoRoot when the target cannot be reached.
[[nodiscard]] double invert_tariff(const Scenario& scenario, SchemeKind kind, double target);

/// Tariff whose subsidy value F Q / r (1 - e^{-rT}) equals the investment cost.
[[nodiscard]] double subsidy_bound(const Scenario& scenario);

}  // namespace feedin
