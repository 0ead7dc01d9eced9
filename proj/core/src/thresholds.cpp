#include "feedin/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "feedin/error.hpp"

namespace feedin {

namespace {

constexpr double kBracketLow = 1e-6;
constexpr double kInitialBracketFactor = 10.0;
constexpr double kMaxBracketFactor = 1000.0;

Branch branch_of(Region region) {
    switch (region) {
        case Region::BelowFloor: return Branch::BelowFloor;
        case Region::Interior: return Branch::Interior;
        case Region::AboveCap: return Branch::AboveCap;
        case Region::NotApplicable: return Branch::Single;
    }
    return Branch::Single;
}

void guard_subsidy(const ProjectValuation& valuation) {
    if (valuation.value_at_zero() >= valuation.project().I) {
        throw Error(ErrorKind::SubsidyExceedsCost,
                    "the guaranteed subsidy covers the investment cost; investing immediately is optimal");
    }
}

// Scans the regions of the contract intersected with [1e-6, hi], doubling hi
// from 10 P_W* up to 1000 P_W* while no root is found.
template <class ResidualOn>
ThresholdResult solve_in_bracket(const ProjectValuation& valuation, ResidualOn residual_on) {
    const double p_w = free_market_threshold(valuation.market(), valuation.project());
    const double cap = kMaxBracketFactor * p_w;
    double hi = kInitialBracketFactor * p_w;
    for (;;) {
        std::vector<BranchEquation> equations;
        for (const auto& span : valuation.regions()) {
            const double a = std::max(span.lo, kBracketLow);
            const double b = std::min(span.hi, hi);
            if (b <= a) {
                continue;
            }
            equations.push_back({branch_of(span.region), a, b, residual_on(span.region)});
        }
        try {
            return solve_branch_system(equations);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoRoot || hi >= cap) {
                throw;
            }
            hi = std::min(2.0 * hi, cap);
        }
    }
}

void fill_residuals(ThresholdResult& result, const ProjectValuation& valuation, double reduced,
                    std::optional<double> eta1) {
    const double I = valuation.project().I;
    const double b1 = valuation.roots().beta1;
    const double p = result.trigger;
    const auto vs = valuation.value_and_slope(p);
    const double exercise = vs.value - I;
    double option = 0.0;
    double option_slope = 0.0;
    if (eta1) {
        const double jp = reduced * std::pow(p, b1);
        const double bp = exercise - jp;  // B P*^eta1 from value matching
        option = bp + jp;
        option_slope = (*eta1 * bp + b1 * jp) / p;
    } else {
        option = exercise;
        option_slope = b1 * exercise / p;
    }
    result.vm_residual = (option - exercise) / I;
    result.sp_residual = (option_slope - vs.slope) / vs.slope;
}

ThresholdResult solve_plain(const ProjectValuation& valuation) {
    guard_subsidy(valuation);
    const double I = valuation.project().I;
    const double b1 = valuation.roots().beta1;
    auto result = solve_in_bracket(valuation, [&valuation, I, b1](Region region) {
        return [&valuation, I, b1, region](double P) {
            const auto vs = valuation.value_and_slope_on(P, region);
            return (b1 * (vs.value - I) - P * vs.slope) / I;
        };
    });
    fill_residuals(result, valuation, 0.0, std::nullopt);
    return result;
}

ThresholdResult closed_form(const ProjectValuation& valuation, double market_leg_factor) {
    guard_subsidy(valuation);
    const auto& m = valuation.market();
    const auto& pr = valuation.project();
    const double b1 = valuation.roots().beta1;
    ThresholdResult result;
    result.trigger = b1 / (b1 - 1.0) * (m.r - m.mu) / (pr.Q * market_leg_factor) * (pr.I - valuation.value_at_zero());
    result.branch = Branch::ClosedForm;
    fill_residuals(result, valuation, 0.0, std::nullopt);
    return result;
}

double coefficient_at(const ProjectValuation& valuation, const ThresholdResult& solved) {
    const double p = solved.trigger;
    return (valuation.value(p).value - valuation.project().I) * std::pow(p, -valuation.roots().beta1);
}

}  // namespace

void validate(const RegulatoryParams& reg) {
    require(std::isfinite(reg.lambda) && reg.lambda >= 0.0, "lambda must be non-negative");
    require(reg.omega >= 0.0 && reg.omega <= 1.0, "omega must lie in [0, 1]");
    require(reg.omega_C >= 0.0 && reg.omega_C <= 1.0, "omega_C must lie in [0, 1]");
}

double free_market_threshold(const MarketParams& market, const ProjectParams& project) {
    validate(project);
    const double b1 = beta_roots(market).beta1;
    return b1 / (b1 - 1.0) * (market.r - market.mu) * project.I / project.Q;
}

ThresholdResult threshold_fixed_price(const FixedPrice& scheme, const MarketParams& market,
                                      const ProjectParams& project) {
    const ProjectValuation valuation(scheme, market, project);
    return closed_form(valuation, std::exp(-(market.r - market.mu) * scheme.T));
}

ThresholdResult threshold_fixed_premium(const FixedPremium& scheme, const MarketParams& market,
                                        const ProjectParams& project) {
    const ProjectValuation valuation(scheme, market, project);
    return closed_form(valuation, 1.0);
}

ThresholdResult threshold_collar(const Collar& scheme, const MarketParams& market, const ProjectParams& project) {
    return solve_plain(ProjectValuation(scheme, market, project));
}

ThresholdResult threshold_floor(const Floor& scheme, const MarketParams& market, const ProjectParams& project) {
    return solve_plain(ProjectValuation(scheme, market, project));
}

ThresholdResult threshold(const Scheme& scheme, const MarketParams& market, const ProjectParams& project) {
    switch (kind_of(scheme)) {
        case SchemeKind::FixedPrice: return threshold_fixed_price(std::get<FixedPrice>(scheme), market, project);
        case SchemeKind::FixedPremium:
            return threshold_fixed_premium(std::get<FixedPremium>(scheme), market, project);
        case SchemeKind::Floor: return threshold_floor(std::get<Floor>(scheme), market, project);
        case SchemeKind::Collar: return threshold_collar(std::get<Collar>(scheme), market, project);
    }
    return {};
}

ThresholdResult threshold_numeric(const Scheme& scheme, const MarketParams& market, const ProjectParams& project) {
    return solve_plain(ProjectValuation(scheme, market, project));
}

double reduced_option_coefficient(const Scheme& scheme, const MarketParams& market, const ProjectParams& project,
                                  const RegulatoryParams& reg) {
    validate(reg);
    const Scheme cut = reduced(scheme, reg.omega, reg.omega_C);
    const ProjectValuation valuation(cut, market, project);
    return coefficient_at(valuation, threshold(cut, market, project));
}

ThresholdResult threshold_ru(const Scheme& scheme, const MarketParams& market, const ProjectParams& project,
                             const RegulatoryParams& reg) {
    validate(reg);
    if (reg.lambda < kLambdaCutoff) {
        return threshold(scheme, market, project);
    }
    const ProjectValuation valuation(scheme, market, project);
    guard_subsidy(valuation);
    const double J = reduced_option_coefficient(scheme, market, project, reg);
    const double eta1 = eta_root(market, reg.lambda);
    const double b1 = valuation.roots().beta1;
    const double I = project.I;
    auto result = solve_in_bracket(valuation, [&valuation, I, b1, eta1, J](Region region) {
        return [&valuation, I, b1, eta1, J, region](double P) {
            const auto vs = valuation.value_and_slope_on(P, region);
            const double jp = J * std::pow(P, b1);
            return (eta1 * (vs.value - I - jp) + b1 * jp - P * vs.slope) / I;
        };
    });
    fill_residuals(result, valuation, J, eta1);
    return result;
}

ThresholdResult solve_threshold(const Scheme& scheme, const MarketParams& market, const ProjectParams& project,
                                const std::optional<RegulatoryParams>& reg) {
    return reg ? threshold_ru(scheme, market, project, *reg) : threshold(scheme, market, project);
}

// -- InvestmentOption -------------------------------------------------------

InvestmentOption::InvestmentOption(const Scheme& scheme, const MarketParams& market, const ProjectParams& project,
                                   const std::optional<RegulatoryParams>& reg)
    : valuation_(scheme, market, project) {
    const auto plain = feedin::threshold(scheme, market, project);
    coefficients_.a1 = coefficient_at(valuation_, plain);
    coefficients_.reduced = coefficients_.a1;
    threshold_ = plain;

    if (reg) {
        coefficients_.reduced = reduced_option_coefficient(scheme, market, project, *reg);
        if (reg->lambda < kLambdaCutoff) {
            coefficients_.b1 = coefficients_.a1 - coefficients_.reduced;
        } else {
            threshold_ = threshold_ru(scheme, market, project, *reg);
            eta1_ = eta_root(market, reg->lambda);
            const double p = threshold_.trigger;
            const double exercise = valuation_.value(p).value - project.I;
            coefficients_.b1 = (exercise - coefficients_.reduced * std::pow(p, valuation_.roots().beta1)) *
                               std::pow(p, -*eta1_);
        }
    }
    exercise_at_trigger_ = valuation_.value(threshold_.trigger).value - project.I;
}

double InvestmentOption::exercise_value(double P) const {
    return valuation_.value(P).value - valuation_.project().I;
}

double InvestmentOption::value(double P) const {
    require(P > 0.0, "price must be positive");
    const double p = threshold_.trigger;
    if (P >= p) {
        return exercise_value(P);
    }
    const double b1 = valuation_.roots().beta1;
    if (!eta1_) {
        return exercise_at_trigger_ * std::pow(P / p, b1);
    }
    const double J = coefficients_.reduced;
    const double head = exercise_at_trigger_ - J * std::pow(p, b1);
    return head * std::pow(P / p, *eta1_) + J * std::pow(P, b1);
}

double InvestmentOption::slope(double P) const {
    require(P > 0.0, "price must be positive");
    const double p = threshold_.trigger;
    if (P >= p) {
        return valuation_.value_and_slope(P).slope;
    }
    const double b1 = valuation_.roots().beta1;
    if (!eta1_) {
        return b1 * exercise_at_trigger_ * std::pow(P / p, b1) / P;
    }
    const double J = coefficients_.reduced;
    const double head = exercise_at_trigger_ - J * std::pow(p, b1);
    return (*eta1_ * head * std::pow(P / p, *eta1_) + b1 * J * std::pow(P, b1)) / P;
}

OptionCoefficients option_coefficients(const Scheme& scheme, const MarketParams& market,
                                       const ProjectParams& project, const std::optional<RegulatoryParams>& reg) {
    return InvestmentOption(scheme, market, project, reg).coefficients();
}

double option_value(const Scheme& scheme, double P, const MarketParams& market, const ProjectParams& project,
                    const std::optional<RegulatoryParams>& reg) {
    return InvestmentOption(scheme, market, project, reg).value(P);
}

}  // namespace feedin
