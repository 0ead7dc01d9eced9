#include "feedin/valuation.hpp"

#include <cmath>
#include <limits>

#include "feedin/error.hpp"

namespace feedin {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RawCoefficients {
    double E1, G1, G2, H2;
};

// Coefficients of the perpetual collar; C may be +inf (floor contract) and
// F may be 0 as long as the caller never uses the below-floor piece.
RawCoefficients raw_coefficients(double F, double C, const CharacteristicRoots& roots, const MarketParams& market,
                                 const ProjectParams& project) {
    const double b1 = roots.beta1;
    const double b2 = roots.beta2;
    const double r = market.r;
    const double rm = market.r - market.mu;
    const double k1 = (b2 / r - (b2 - 1.0) / rm) / (b1 - b2);
    const double k2 = (b1 / r - (b1 - 1.0) / rm) / (b1 - b2);
    const double Q = project.Q;
    const double f1 = F > 0.0 ? std::pow(F, 1.0 - b1) : kInf;
    const double c1 = std::isinf(C) ? 0.0 : std::pow(C, 1.0 - b1);
    const double f2 = std::pow(F, 1.0 - b2);
    const double c2 = std::isinf(C) ? kInf : std::pow(C, 1.0 - b2);
    RawCoefficients out{};
    out.E1 = F > 0.0 ? (f1 - c1) * Q * k1 : 0.0;
    out.G1 = -c1 * Q * k1;
    out.G2 = f2 * Q * k2;
    out.H2 = std::isinf(C) ? 0.0 : (f2 - c2) * Q * k2;
    return out;
}

void validate_inputs(const Scheme& scheme, const MarketParams& market, const ProjectParams& project) {
    validate(market);
    validate(project);
    validate(scheme);
}

}  // namespace

std::string_view to_string(Region region) noexcept {
    switch (region) {
        case Region::BelowFloor: return "below-floor";
        case Region::Interior: return "interior";
        case Region::AboveCap: return "above-cap";
        case Region::NotApplicable: return "n/a";
    }
    return "unknown";
}

double subsidy_value(const Scheme& scheme, const MarketParams& market, const ProjectParams& project) {
    const double F = tariff(scheme);
    const double T = horizon(scheme);
    return F * project.Q / market.r * (-std::expm1(-market.r * T));
}

ProjectValuation::ProjectValuation(const Scheme& scheme, const MarketParams& market, const ProjectParams& project)
    : scheme_(scheme), market_(market), project_(project) {
    validate_inputs(scheme, market, project);
    roots_ = beta_roots(market);
    T_ = horizon(scheme);
    value_at_zero_ = subsidy_value(scheme, market, project);

    const double F = tariff(scheme);
    const double Q = project.Q;
    const double r = market.r;
    const double rm = market.r - market.mu;
    auto add = [this](Region region, double lo, double hi, std::array<double, 4> c) {
        spans_[piece_count_] = Span{region, lo, hi};
        pieces_[piece_count_] = Piece{c};
        ++piece_count_;
    };

    switch (kind_of(scheme)) {
        case SchemeKind::FixedPrice:
            closed_form_ = true;
            add(Region::NotApplicable, 0.0, kInf, {0.0, 0.0, 0.0, F * Q / r});
            break;
        case SchemeKind::FixedPremium:
            closed_form_ = true;
            add(Region::NotApplicable, 0.0, kInf, {0.0, 0.0, Q / rm, F * Q / r});
            break;
        case SchemeKind::Floor: {
            const auto k = raw_coefficients(F, kInf, roots_, market, project);
            if (F > 0.0) {
                add(Region::BelowFloor, 0.0, F, {k.E1, 0.0, 0.0, F * Q / r});
            }
            add(Region::Interior, F, kInf, {0.0, k.G2, Q / rm, 0.0});
            break;
        }
        case SchemeKind::Collar: {
            const double C = std::get<Collar>(scheme).C;
            const auto k = raw_coefficients(F, C, roots_, market, project);
            if (F > 0.0) {
                add(Region::BelowFloor, 0.0, F, {k.E1, 0.0, 0.0, F * Q / r});
            }
            if (C > F) {
                add(Region::Interior, F, C, {k.G1, k.G2, Q / rm, 0.0});
            }
            add(Region::AboveCap, C, kInf, {0.0, k.H2, 0.0, C * Q / r});
            break;
        }
    }
}

Region ProjectValuation::region_of(double P) const noexcept {
    for (std::size_t k = 0; k + 1 < piece_count_; ++k) {
        if (P < spans_[k].hi) {
            return spans_[k].region;
        }
    }
    return spans_[piece_count_ - 1].region;
}

std::size_t ProjectValuation::piece_index(Region region) const noexcept {
    for (std::size_t k = 0; k < piece_count_; ++k) {
        if (spans_[k].region == region) {
            return k;
        }
    }
    return piece_count_;
}

ValueSlope ProjectValuation::perpetual(double P, std::size_t k) const noexcept {
    const auto& c = pieces_[k].c;
    const double b1 = roots_.beta1;
    const double b2 = roots_.beta2;
    double value = c[3] + c[2] * P;
    double slope = c[2];
    if (c[0] != 0.0) {
        const double term = c[0] * std::pow(P, b1);
        value += term;
        slope += b1 * term / P;
    }
    if (c[1] != 0.0) {
        const double term = c[1] * std::pow(P, b2);
        value += term;
        slope += b2 * term / P;
    }
    return {value, slope};
}

ValueSlope ProjectValuation::perpetual_value(double P) const noexcept {
    return perpetual(P, piece_index(region_of(P)));
}

// S(P) = e^{-rT} E[V_perp(P_T)]. For a single power term on [lo, hi):
//   e^{-rT} E[P_T^b 1{lo <= P_T < hi}]
//     = P^b exp((b mu + 0.5 s^2 b (b-1) - r) T) (Phi(d_b(P, lo)) - Phi(d_b(P, hi)))
// The exponential factor is 1 for b = beta1, beta2, e^{-(r-mu)T} for b = 1
// and e^{-rT} for b = 0.
ValueSlope ProjectValuation::delayed_value(double P) const {
    require(P > 0.0, "price must be positive");
    if (T_ == 0.0) {
        return perpetual_value(P);
    }
    const double exponents[4] = {roots_.beta1, roots_.beta2, 1.0, 0.0};
    const double growth[4] = {1.0, 1.0, std::exp(-(market_.r - market_.mu) * T_), std::exp(-market_.r * T_)};
    auto d = [&](double b, double X) {
        if (X <= 0.0) {
            return kInf;
        }
        if (std::isinf(X)) {
            return -kInf;
        }
        return d_beta(b, P, X, market_, T_);
    };

    double value = 0.0;
    double slope = 0.0;
    for (std::size_t k = 0; k < piece_count_; ++k) {
        const auto& span = spans_[k];
        for (int j = 0; j < 4; ++j) {
            const double coeff = pieces_[k].c[j];
            if (coeff == 0.0) {
                continue;
            }
            const double b = exponents[j];
            const double mass = norm_mass(d(b, span.hi), d(b, span.lo));
            if (mass == 0.0) {
                continue;
            }
            const double power = j == 3 ? 1.0 : (j == 2 ? P : std::pow(P, b));
            const double term = coeff * power * growth[j] * mass;
            value += term;
            slope += b * term / P;
        }
    }
    return {value, slope};
}

ValueSlope ProjectValuation::value_and_slope_on(double P, Region piece) const {
    require(P > 0.0, "price must be positive");
    const double rm = market_.r - market_.mu;
    const double Q = project_.Q;
    if (T_ == 0.0) {
        return {P * Q / rm, Q / rm};
    }
    const double tail = std::exp(-rm * T_) * Q / rm;
    if (closed_form_) {
        const double F = tariff(scheme_);
        if (kind_of(scheme_) == SchemeKind::FixedPrice) {
            return {F * Q / market_.r * (-std::expm1(-market_.r * T_)) + P * tail, tail};
        }
        return {P * Q / rm + F * Q / market_.r * (-std::expm1(-market_.r * T_)), Q / rm};
    }
    std::size_t k = piece == Region::NotApplicable ? piece_index(region_of(P)) : piece_index(piece);
    require(k < piece_count_, "requested region does not exist for this contract");
    const auto perp = perpetual(P, k);
    const auto delayed = delayed_value(P);
    return {perp.value - delayed.value + P * tail, perp.slope - delayed.slope + tail};
}

ValueSlope ProjectValuation::value_and_slope(double P) const {
    return value_and_slope_on(P, Region::NotApplicable);
}

ValuationResult ProjectValuation::value(double P) const {
    const auto vs = value_and_slope(P);
    return {vs.value, closed_form_ ? Region::NotApplicable : region_of(P)};
}

// -- Free functions ---------------------------------------------------------

CollarCoefficients collar_coefficients(const Collar& scheme, const MarketParams& market,
                                       const ProjectParams& project) {
    validate_inputs(scheme, market, project);
    require(scheme.F > 0.0, "collar floor F must be positive");
    const auto k = raw_coefficients(scheme.F, scheme.C, beta_roots(market), market, project);
    return {k.E1, k.G1, k.G2, k.H2};
}

ValuationResult perpetual_collar_value(double P, const Collar& scheme, const MarketParams& market,
                                       const ProjectParams& project) {
    require(P > 0.0, "price must be positive");
    const ProjectValuation valuation(scheme, market, project);
    return {valuation.perpetual_value(P).value, valuation.value(P).region};
}

double delayed_collar_value(double P, const Collar& scheme, const MarketParams& market,
                            const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).delayed_value(P).value;
}

ValuationResult finite_collar_value(double P, const Collar& scheme, const MarketParams& market,
                                    const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).value(P);
}

FloorCoefficients floor_coefficients(const Floor& scheme, const MarketParams& market, const ProjectParams& project) {
    validate_inputs(scheme, market, project);
    require(scheme.F > 0.0, "floor F must be positive for the coefficient path");
    const auto k = raw_coefficients(scheme.F, kInf, beta_roots(market), market, project);
    return {k.E1, k.G2};
}

ValuationResult perpetual_floor_value(double P, const Floor& scheme, const MarketParams& market,
                                      const ProjectParams& project) {
    require(P > 0.0, "price must be positive");
    const ProjectValuation valuation(scheme, market, project);
    return {valuation.perpetual_value(P).value, valuation.value(P).region};
}

double delayed_floor_value(double P, const Floor& scheme, const MarketParams& market, const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).delayed_value(P).value;
}

ValuationResult finite_floor_value(double P, const Floor& scheme, const MarketParams& market,
                                   const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).value(P);
}

double fixed_price_value(double P, const FixedPrice& scheme, const MarketParams& market,
                         const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).value(P).value;
}

double fixed_premium_value(double P, const FixedPremium& scheme, const MarketParams& market,
                           const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).value(P).value;
}

ValuationResult project_value(const Scheme& scheme, double P, const MarketParams& market,
                              const ProjectParams& project) {
    return ProjectValuation(scheme, market, project).value(P);
}

}  // namespace feedin
