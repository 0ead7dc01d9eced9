#pragma once

// Value of the project at the moment of investment, V_S(P), for the four
// contract designs.
//
// Collar and floor contracts are valued as
//
//     V(P) = V_perpetual(P) - S(P) + P Q / (r - mu) e^{-(r - mu) T}
//
// where S(P) = e^{-rT} E[V_perpetual(P_T)] is the value today of the same
// perpetual contract starting at T. V_perpetual is piecewise in P (below the
// floor, between floor and cap, above the cap) with power terms P^beta1 and
// P^beta2 glued C^1 at the kinks.

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include "feedin/scheme.hpp"
#include "feedin/stochastic.hpp"

namespace feedin {

enum class Region { BelowFloor, Interior, AboveCap, NotApplicable };

[[nodiscard]] std::string_view to_string(Region region) noexcept;

struct ValuationResult {
    double value;
    Region region;
};

struct CollarCoefficients {
    double E1;
    double G1;
    double G2;
    double H2;
};

struct FloorCoefficients {
    double L1;
    double M2;
};

/// Value and first derivative in P.
struct ValueSlope {
    double value;
    double slope;
};

// -- Collar -----------------------------------------------------------------

/// Requires C >= F > 0.
[[nodiscard]] CollarCoefficients collar_coefficients(const Collar& scheme, const MarketParams& market,
                                                     const ProjectParams& project);

[[nodiscard]] ValuationResult perpetual_collar_value(double P, const Collar& scheme, const MarketParams& market,
                                                     const ProjectParams& project);

/// Value today of a perpetual collar that starts paying at T.
[[nodiscard]] double delayed_collar_value(double P, const Collar& scheme, const MarketParams& market,
                                          const ProjectParams& project);

[[nodiscard]] ValuationResult finite_collar_value(double P, const Collar& scheme, const MarketParams& market,
                                                  const ProjectParams& project);

// -- Floor (minimum price guarantee) ----------------------------------------

/// Requires F > 0; L1 diverges as F -> 0.
[[nodiscard]] FloorCoefficients floor_coefficients(const Floor& scheme, const MarketParams& market,
                                                   const ProjectParams& project);

[[nodiscard]] ValuationResult perpetual_floor_value(double P, const Floor& scheme, const MarketParams& market,
                                                    const ProjectParams& project);

[[nodiscard]] double delayed_floor_value(double P, const Floor& scheme, const MarketParams& market,
                                         const ProjectParams& project);

[[nodiscard]] ValuationResult finite_floor_value(double P, const Floor& scheme, const MarketParams& market,
                                                 const ProjectParams& project);

// -- Fixed price / fixed premium --------------------------------------------

/// F Q / r (1 - e^{-rT}) + P Q / (r - mu) e^{-(r - mu) T}
[[nodiscard]] double fixed_price_value(double P, const FixedPrice& scheme, const MarketParams& market,
                                       const ProjectParams& project);

/// P Q / (r - mu) + F Q / r (1 - e^{-rT})
[[nodiscard]] double fixed_premium_value(double P, const FixedPremium& scheme, const MarketParams& market,
                                         const ProjectParams& project);

[[nodiscard]] ValuationResult project_value(const Scheme& scheme, double P, const MarketParams& market,
                                            const ProjectParams& project);

/// Present value of the guaranteed subsidy leg, F Q / r (1 - e^{-rT}).
/// This is also lim_{P -> 0} V_S(P) for every scheme.
[[nodiscard]] double subsidy_value(const Scheme& scheme, const MarketParams& market, const ProjectParams& project);

/// Piecewise perpetual contract plus its delayed counterpart, with the
/// coefficients computed once. All scheme kinds are supported; fixed price
/// and premium contracts have a single piece spanning (0, inf).
class ProjectValuation {
public:
    ProjectValuation(const Scheme& scheme, const MarketParams& market, const ProjectParams& project);

    [[nodiscard]] ValuationResult value(double P) const;

    /// V and dV/dP at P.
    [[nodiscard]] ValueSlope value_and_slope(double P) const;

    /// V and dV/dP with the perpetual part evaluated by the formula of the
    /// given region, whatever region P falls into. Region::NotApplicable
    /// selects the natural region of P.
    [[nodiscard]] ValueSlope value_and_slope_on(double P, Region piece) const;

    /// Regions present for this contract in increasing price order. Fixed
    /// price and premium contracts report one NotApplicable span (0, inf).
    struct Span {
        Region region;
        double lo;
        double hi;
    };
    [[nodiscard]] std::span<const Span> regions() const noexcept { return {spans_.data(), piece_count_}; }

    [[nodiscard]] const Scheme& scheme() const noexcept { return scheme_; }
    [[nodiscard]] const MarketParams& market() const noexcept { return market_; }
    [[nodiscard]] const ProjectParams& project() const noexcept { return project_; }
    [[nodiscard]] const CharacteristicRoots& roots() const noexcept { return roots_; }

    /// Perpetual contract value and slope at P (natural region).
    [[nodiscard]] ValueSlope perpetual_value(double P) const noexcept;

    /// S(P): value today of the perpetual contract deferred to T.
    [[nodiscard]] ValueSlope delayed_value(double P) const;

    /// V(0+), the subsidy leg alone.
    [[nodiscard]] double value_at_zero() const noexcept { return value_at_zero_; }

private:
    // c[0] P^beta1 + c[1] P^beta2 + c[2] P + c[3] on [lo, hi).
    struct Piece {
        std::array<double, 4> c;
    };

    [[nodiscard]] Region region_of(double P) const noexcept;
    [[nodiscard]] std::size_t piece_index(Region region) const noexcept;
    [[nodiscard]] ValueSlope perpetual(double P, std::size_t k) const noexcept;

    Scheme scheme_;
    MarketParams market_;
    ProjectParams project_;
    CharacteristicRoots roots_;
    double T_ = 0.0;
    double value_at_zero_ = 0.0;
    bool closed_form_ = false;
    std::array<Span, 3> spans_{};
    std::array<Piece, 3> pieces_{};
    std::size_t piece_count_ = 0;
};

}  // namespace feedin
