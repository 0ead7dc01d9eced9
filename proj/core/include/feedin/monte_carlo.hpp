#pragma once

#include <cstdint>

#include "feedin/scheme.hpp"
#include "feedin/stochastic.hpp"

namespace feedin {

struct SimConfig {
    std::uint64_t n_paths = 100'000;
    int steps_per_year = 52;
    // Diagnostic only: the perpetuity after T is always valued analytically.
    double horizon_tail_years = 0.0;
    std::uint64_t seed = 20'240'601;
    bool antithetic = false;
    // 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Throws InvalidConfig unless n_paths >= 1000 and steps_per_year >= 12.
void validate(const SimConfig& cfg);

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_paths = 0;
};

/// Simulates the price exactly on a grid of steps_per_year steps per year,
/// integrates the discounted profit flow over [0, T] by the trapezoid rule
/// and adds P_T Q e^{-rT} / (r - mu) for the market sales after T.
///
/// Path i draws from its own generator seeded from (seed, i), and per-path
/// values are reduced in path order, so the estimate does not depend on the
/// thread count. With antithetic sampling a path and its mirror count as one
/// sample for the standard error.
[[nodiscard]] McEstimate mc_project_value(const Scheme& scheme, double P, const MarketParams& market,
                                          const ProjectParams& project, const SimConfig& cfg = {});

/// Profit flow per year at price P while the contract runs.
[[nodiscard]] double profit_flow(const Scheme& scheme, double P, const ProjectParams& project) noexcept;

}  // namespace feedin
