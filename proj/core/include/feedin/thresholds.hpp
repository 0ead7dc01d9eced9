#pragma once

// Optimal investment thresholds and option values.
//
// Without regulatory risk the option to invest is F_S(P) = A P^beta1 below
// the trigger P* and V_S(P) - I above it; value matching and smooth pasting
// reduce to the first-order condition
//
//     beta1 (V(P*) - I) - P* V'(P*) = 0.
//
// With regulatory risk the tariff may be cut to omega F (and the cap to
// omega_C C) at the first jump of a Poisson process with intensity lambda,
// until investment. Before the cut the option is B P^eta1 + J P^beta1, where
// J is the option coefficient of the reduced contract, solved first and
// frozen. The trigger solves
//
//     eta1 (V(P*) - I - J P*^beta1) + beta1 J P*^beta1 - P* V'(P*) = 0.

#include <optional>

#include "feedin/root_finding.hpp"
#include "feedin/scheme.hpp"
#include "feedin/stochastic.hpp"
#include "feedin/valuation.hpp"

namespace feedin {

struct RegulatoryParams {
    double lambda = 0.5;
    double omega = 0.8;
    double omega_C = 1.0;

    friend bool operator==(const RegulatoryParams&, const RegulatoryParams&) = default;
};

void validate(const RegulatoryParams& reg);

struct OptionCoefficients {
    /// A: option coefficient of the contract without regulatory risk.
    double a1 = 0.0;
    /// J: option coefficient of the reduced contract (equals a1 without risk).
    double reduced = 0.0;
    /// B: coefficient of P^eta1 before the cut (zero without risk).
    double b1 = 0.0;
};

/// Below this intensity the regulatory solve is replaced by the plain one.
inline constexpr double kLambdaCutoff = 1e-8;

/// beta1 / (beta1 - 1) (r - mu) I / Q: trigger with no subsidy at all.
[[nodiscard]] double free_market_threshold(const MarketParams& market, const ProjectParams& project);

/// Closed form. Throws SubsidyExceedsCost when F Q / r (1 - e^{-rT}) >= I.
[[nodiscard]] ThresholdResult threshold_fixed_price(const FixedPrice& scheme, const MarketParams& market,
                                                    const ProjectParams& project);

/// Closed form. Throws SubsidyExceedsCost when F Q / r (1 - e^{-rT}) >= I.
[[nodiscard]] ThresholdResult threshold_fixed_premium(const FixedPremium& scheme, const MarketParams& market,
                                                      const ProjectParams& project);

/// Three branch equations (below floor, between floor and cap, above cap).
[[nodiscard]] ThresholdResult threshold_collar(const Collar& scheme, const MarketParams& market,
                                               const ProjectParams& project);

/// Two branch equations (below and above the floor).
[[nodiscard]] ThresholdResult threshold_floor(const Floor& scheme, const MarketParams& market,
                                              const ProjectParams& project);

/// Dispatches to the scheme-specific threshold without regulatory risk.
[[nodiscard]] ThresholdResult threshold(const Scheme& scheme, const MarketParams& market,
                                        const ProjectParams& project);

/// Solves the first-order condition numerically for any scheme, bypassing
/// the closed forms. Used to cross-check them.
[[nodiscard]] ThresholdResult threshold_numeric(const Scheme& scheme, const MarketParams& market,
                                                const ProjectParams& project);

/// J = (V'(P') - I) P'^{-beta1} for the reduced contract with trigger P'.
[[nodiscard]] double reduced_option_coefficient(const Scheme& scheme, const MarketParams& market,
                                                const ProjectParams& project, const RegulatoryParams& reg);

/// Threshold under regulatory risk; lambda below kLambdaCutoff returns the
/// plain threshold unchanged.
[[nodiscard]] ThresholdResult threshold_ru(const Scheme& scheme, const MarketParams& market,
                                           const ProjectParams& project, const RegulatoryParams& reg);

/// Threshold with or without regulatory risk.
[[nodiscard]] ThresholdResult solve_threshold(const Scheme& scheme, const MarketParams& market,
                                              const ProjectParams& project,
                                              const std::optional<RegulatoryParams>& reg);

/// Solved option: trigger plus coefficients, evaluable at any price.
class InvestmentOption {
public:
    InvestmentOption(const Scheme& scheme, const MarketParams& market, const ProjectParams& project,
                     const std::optional<RegulatoryParams>& reg = std::nullopt);

    [[nodiscard]] double value(double P) const;
    [[nodiscard]] double slope(double P) const;

    /// V_S(P) - I.
    [[nodiscard]] double exercise_value(double P) const;

    [[nodiscard]] const ThresholdResult& threshold() const noexcept { return threshold_; }
    [[nodiscard]] const OptionCoefficients& coefficients() const noexcept { return coefficients_; }
    [[nodiscard]] const ProjectValuation& valuation() const noexcept { return valuation_; }
    [[nodiscard]] bool regulatory() const noexcept { return eta1_.has_value(); }

private:
    ProjectValuation valuation_;
    ThresholdResult threshold_;
    OptionCoefficients coefficients_;
    std::optional<double> eta1_;
    double exercise_at_trigger_ = 0.0;
};

[[nodiscard]] OptionCoefficients option_coefficients(const Scheme& scheme, const MarketParams& market,
                                                     const ProjectParams& project,
                                                     const std::optional<RegulatoryParams>& reg = std::nullopt);

/// F_S(P) or F_SR(P).
[[nodiscard]] double option_value(const Scheme& scheme, double P, const MarketParams& market,
                                  const ProjectParams& project,
                                  const std::optional<RegulatoryParams>& reg = std::nullopt);

}  // namespace feedin
