#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "feedin/scheme.hpp"
#include "feedin/stochastic.hpp"
#include "feedin/thresholds.hpp"

namespace feedin {

struct BoundaryReport {
    double trigger = 0.0;
    double tolerance = 0.0;
    int grid_points = 0;
    int violations = 0;
    // Largest amount by which the option value falls short of max(V - I, 0),
    // or departs from V - I above the trigger. Zero when nothing fails.
    double worst_violation = 0.0;
    // Smallest grid price from which the option value stays equal to V - I.
    double equality_onset = 0.0;
    // Spacing of the grid just below the trigger.
    double grid_step = 0.0;

    [[nodiscard]] bool passed() const noexcept { return violations == 0; }
};

/// Evaluates the solved option on 200 points spanning [0.2 P*, 2 P*] and
/// checks F(P) >= max(V(P) - I, 0), with equality (within 1e-6 I) exactly
/// from the trigger onwards. An equality onset further than one grid step
/// below the trigger counts as a violation. Report only, never throws for a
/// failed check; solver errors propagate.
[[nodiscard]] BoundaryReport exercise_boundary_check(const Scheme& scheme, const MarketParams& market,
                                                     const ProjectParams& project,
                                                     const std::optional<RegulatoryParams>& reg = std::nullopt,
                                                     int grid_points = 200);

enum class StaticsParam { Lambda, Omega, OmegaC, F, Sigma };

[[nodiscard]] std::string_view to_string(StaticsParam param) noexcept;
[[nodiscard]] StaticsParam parse_statics_param(std::string_view text);

enum class Monotonicity { StrictlyIncreasing, StrictlyDecreasing, NonMonotone, Failed };

[[nodiscard]] std::string_view to_string(Monotonicity verdict) noexcept;

struct StaticsReport {
    StaticsParam param;
    std::vector<double> grid;
    std::vector<double> thresholds;
    // thresholds[i + 1] - thresholds[i]
    std::vector<double> differences;
    Monotonicity verdict = Monotonicity::Failed;
    // First solver error, when verdict is Failed.
    std::string error;
};

/// Solves the threshold at each grid value of one parameter, everything
/// else held fixed. Regulatory parameters need reg; without it the base
/// RegulatoryParams are used for those sweeps only.
[[nodiscard]] StaticsReport comparative_statics_check(const Scheme& scheme, const MarketParams& market,
                                                      const ProjectParams& project,
                                                      const std::optional<RegulatoryParams>& reg,
                                                      StaticsParam param, std::span<const double> grid);

}  // namespace feedin
