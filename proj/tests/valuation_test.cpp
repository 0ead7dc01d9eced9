#include <cmath>

#include <gtest/gtest.h>

#include "feedin/error.hpp"
#include "feedin/scenario.hpp"
#include "feedin/valuation.hpp"
#include "random_params.hpp"

namespace feedin {
namespace {

const MarketParams kMarket;
const ProjectParams kProject;
const Collar kCollar{25.0, kBaseCap, 15.0};

// Perpetual collar value written out piece by piece from the coefficients.
double literal_perpetual(double P, const Collar& c, const MarketParams& m, const ProjectParams& pr) {
    const auto k = collar_coefficients(c, m, pr);
    const auto roots = beta_roots(m);
    if (P < c.F) {
        return k.E1 * std::pow(P, roots.beta1) + c.F * pr.Q / m.r;
    }
    if (P < c.C) {
        return k.G1 * std::pow(P, roots.beta1) + k.G2 * std::pow(P, roots.beta2) + P * pr.Q / (m.r - m.mu);
    }
    return k.H2 * std::pow(P, roots.beta2) + c.C * pr.Q / m.r;
}

// Delayed collar value with every normal term spelled out.
double literal_delayed(double P, const Collar& c, const MarketParams& m, const ProjectParams& pr) {
    const auto k = collar_coefficients(c, m, pr);
    const auto roots = beta_roots(m);
    const double b1 = roots.beta1, b2 = roots.beta2, T = c.T, r = m.r, rm = m.r - m.mu;
    auto d = [&](double b, double X) { return d_beta(b, P, X, m, T); };
    const double Q = pr.Q;
    return k.E1 * std::pow(P, b1) * norm_cdf(-d(b1, c.F)) + c.F * Q / r * std::exp(-r * T) * norm_cdf(-d(0.0, c.F)) +
           k.G1 * std::pow(P, b1) * (norm_cdf(d(b1, c.F)) - norm_cdf(d(b1, c.C))) +
           k.G2 * std::pow(P, b2) * (norm_cdf(d(b2, c.F)) - norm_cdf(d(b2, c.C))) +
           P * Q / rm * std::exp(-rm * T) * (norm_cdf(d(1.0, c.F)) - norm_cdf(d(1.0, c.C))) +
           k.H2 * std::pow(P, b2) * norm_cdf(d(b2, c.C)) + c.C * Q / r * std::exp(-r * T) * norm_cdf(d(0.0, c.C));
}

// e^{-rT} E[V(P_T)] by Simpson quadrature over the normal shock.
template <class V>
double quadrature_delayed(double P, double T, const MarketParams& m, V perpetual) {
    const int n = 8000;
    const double lo = -9.0, hi = 9.0, h = (hi - lo) / n;
    auto integrand = [&](double z) {
        const double x = P * std::exp((m.mu - 0.5 * m.sigma * m.sigma) * T + m.sigma * std::sqrt(T) * z);
        return perpetual(x) * std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
    };
    double sum = integrand(lo) + integrand(hi);
    for (int i = 1; i < n; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lo + i * h);
    }
    return std::exp(-m.r * T) * sum * h / 3.0;
}

TEST(CollarCoefficients, SignsAtBaseCase) {
    const auto k = collar_coefficients(kCollar, kMarket, kProject);
    const auto floor = floor_coefficients(Floor{25.0, 15.0}, kMarket, kProject);
    EXPECT_GT(floor.L1, 0.0);
    EXPECT_GT(k.E1, 0.0);
    EXPECT_LT(k.E1, floor.L1);
    EXPECT_LT(k.G1, 0.0);
    EXPECT_GT(k.G2, 0.0);
    EXPECT_DOUBLE_EQ(floor.M2, k.G2);
}

TEST(PerpetualCollar, MatchesLiteralPieces) {
    const ProjectValuation v(kCollar, kMarket, kProject);
    for (double P : {5.0, 20.0, 24.999, 25.0, 40.0, 57.0, 57.1, 90.0}) {
        const double expected = literal_perpetual(P, kCollar, kMarket, kProject);
        EXPECT_NEAR(v.perpetual_value(P).value, expected, 1e-9 * expected) << P;
    }
}

TEST(PerpetualCollar, ContinuouslyDifferentiableAtFloorAndCap) {
    const ProjectValuation v(kCollar, kMarket, kProject);
    for (double X : {kCollar.F, kCollar.C}) {
        const auto below = v.perpetual_value(X * (1.0 - 1e-9));
        const auto above = v.perpetual_value(X * (1.0 + 1e-9));
        EXPECT_NEAR(below.value, above.value, 1e-6 * above.value) << X;
        EXPECT_NEAR(below.slope, above.slope, 1e-5 * std::abs(above.slope)) << X;
    }
}

TEST(PerpetualCollar, SolvesPricingEquationInEachRegion) {
    const ProjectValuation v(kCollar, kMarket, kProject);
    const double s2 = kMarket.sigma * kMarket.sigma;
    for (double P : {10.0, 40.0, 80.0}) {
        const double h = 1e-3 * P;
        const double vm = v.perpetual_value(P - h).value, v0 = v.perpetual_value(P).value,
                     vp = v.perpetual_value(P + h).value;
        const double second = (vp - 2.0 * v0 + vm) / (h * h);
        const double first = v.perpetual_value(P).slope;
        const double flow = std::min(std::max(P, kCollar.F), kCollar.C) * kProject.Q;
        const double residual = 0.5 * s2 * P * P * second + kMarket.mu * P * first - kMarket.r * v0 + flow;
        EXPECT_LT(std::abs(residual), 1e-5 * flow) << P;
    }
}

TEST(DelayedCollar, MatchesLiteralFormula) {
    testing::ParamGenerator gen(11);
    for (int i = 0; i < 10; ++i) {
        const auto d = gen.next();
        const Collar c{d.F, d.C, d.T};
        const double got = delayed_collar_value(d.P, c, d.market, d.project);
        const double expected = literal_delayed(d.P, c, d.market, d.project);
        EXPECT_NEAR(got, expected, 1e-9 * std::abs(expected)) << i;
    }
}

TEST(DelayedCollar, MatchesQuadrature) {
    for (double P : {10.0, 30.0, 60.0}) {
        const double got = delayed_collar_value(P, kCollar, kMarket, kProject);
        const double expected = quadrature_delayed(
            P, kCollar.T, kMarket, [](double x) { return literal_perpetual(x, kCollar, kMarket, kProject); });
        EXPECT_NEAR(got, expected, 1e-7 * expected) << P;
    }
}

TEST(DelayedFloor, MatchesQuadrature) {
    const Floor floor{25.0, 15.0};
    const ProjectValuation v(floor, kMarket, kProject);
    for (double P : {10.0, 30.0, 60.0}) {
        const double expected =
            quadrature_delayed(P, floor.T, kMarket, [&v](double x) { return v.perpetual_value(x).value; });
        EXPECT_NEAR(delayed_floor_value(P, floor, kMarket, kProject), expected, 1e-7 * expected) << P;
    }
}

TEST(FiniteContracts, SlopeMatchesFiniteDifference) {
    testing::ParamGenerator gen(12);
    for (int i = 0; i < 5; ++i) {
        const auto d = gen.next();
        for (const Scheme& s : {Scheme{FixedPrice{d.F, d.T}}, Scheme{FixedPremium{d.F, d.T}}, Scheme{Floor{d.F, d.T}},
                                Scheme{Collar{d.F, d.C, d.T}}}) {
            const ProjectValuation v(s, d.market, d.project);
            const double h = 1e-5 * d.P;
            const double fd = (v.value(d.P + h).value - v.value(d.P - h).value) / (2.0 * h);
            EXPECT_NEAR(v.value_and_slope(d.P).slope, fd, 1e-6 * std::abs(fd) + 1e-6) << i;
        }
    }
}

TEST(FixedPrice, BaseCaseValue) {
    const double expected = 25.0 * 5256.0 / 0.05 * (1.0 - std::exp(-0.75)) + 30.0 * 5256.0 / 0.05 * std::exp(-0.75);
    EXPECT_NEAR(fixed_price_value(30.0, FixedPrice{25.0, 15.0}, kMarket, kProject), expected, 1e-6);
    EXPECT_NEAR(expected, 2'876'275.86, 0.01);
}

TEST(FixedPremium, ClosedForm) {
    const double expected = 30.0 * 5256.0 / 0.05 + 25.0 * 5256.0 / 0.05 * (1.0 - std::exp(-0.75));
    EXPECT_NEAR(fixed_premium_value(30.0, FixedPremium{25.0, 15.0}, kMarket, kProject), expected, 1e-6);
}

TEST(Collar, DegeneratesToFixedPriceWhenCapEqualsFloor) {
    const Collar c{25.0, 25.0, 15.0};
    for (double P : {5.0, 25.0, 70.0}) {
        const double fixed = fixed_price_value(P, FixedPrice{25.0, 15.0}, kMarket, kProject);
        EXPECT_NEAR(finite_collar_value(P, c, kMarket, kProject).value, fixed, 1e-8 * fixed) << P;
    }
}

TEST(Collar, ApproachesFloorForLargeCap) {
    const Collar c{25.0, 1e6, 15.0};
    for (double P : {5.0, 25.0, 70.0}) {
        const double floor = finite_floor_value(P, Floor{25.0, 15.0}, kMarket, kProject).value;
        EXPECT_NEAR(finite_collar_value(P, c, kMarket, kProject).value, floor, 1e-8 * floor) << P;
    }
}

TEST(Dominance, PremiumAboveFloorAboveCollar) {
    for (double P = 2.0; P < 150.0; P += 3.7) {
        const double premium = fixed_premium_value(P, FixedPremium{25.0, 15.0}, kMarket, kProject);
        const double floor = finite_floor_value(P, Floor{25.0, 15.0}, kMarket, kProject).value;
        const double collar = finite_collar_value(P, kCollar, kMarket, kProject).value;
        EXPECT_GE(premium, floor) << P;
        EXPECT_GE(floor, collar) << P;
    }
}

TEST(Regions, ReportedByPrice) {
    EXPECT_EQ(finite_collar_value(10.0, kCollar, kMarket, kProject).region, Region::BelowFloor);
    EXPECT_EQ(finite_collar_value(30.0, kCollar, kMarket, kProject).region, Region::Interior);
    EXPECT_EQ(finite_collar_value(80.0, kCollar, kMarket, kProject).region, Region::AboveCap);
    EXPECT_EQ(finite_floor_value(80.0, Floor{25.0, 15.0}, kMarket, kProject).region, Region::Interior);
    EXPECT_EQ(project_value(FixedPrice{25.0, 15.0}, 30.0, kMarket, kProject).region, Region::NotApplicable);
}

TEST(ZeroHorizon, EveryContractIsTheMarketPerpetuity) {
    for (const Scheme& s : {Scheme{FixedPrice{25.0, 0.0}}, Scheme{FixedPremium{25.0, 0.0}}, Scheme{Floor{25.0, 0.0}},
                            Scheme{Collar{25.0, 40.0, 0.0}}}) {
        for (double P : {10.0, 30.0, 60.0}) {
            EXPECT_DOUBLE_EQ(project_value(s, P, kMarket, kProject).value, P * 5256.0 / 0.05);
        }
    }
}

TEST(ZeroTariff, FloorIsTheMarketPerpetuity) {
    const ProjectValuation v(Floor{0.0, 15.0}, kMarket, kProject);
    EXPECT_NEAR(v.value(30.0).value, 30.0 * 5256.0 / 0.05, 1e-6);
    EXPECT_DOUBLE_EQ(v.value_at_zero(), 0.0);
}

TEST(ValueAtZero, IsTheSubsidyLeg) {
    const double subsidy = 25.0 * 5256.0 / 0.05 * (1.0 - std::exp(-0.75));
    for (const Scheme& s : {Scheme{FixedPrice{25.0, 15.0}}, Scheme{FixedPremium{25.0, 15.0}},
                            Scheme{Floor{25.0, 15.0}}, Scheme{kCollar}}) {
        const ProjectValuation v(s, kMarket, kProject);
        EXPECT_NEAR(v.value_at_zero(), subsidy, 1e-6);
        EXPECT_NEAR(v.value(1e-4).value, subsidy, 1e-3 * subsidy);
    }
}

TEST(Validation, RejectsBadContracts) {
    EXPECT_THROW((void)finite_collar_value(30.0, Collar{30.0, 20.0, 15.0}, kMarket, kProject), Error);
    EXPECT_THROW((void)finite_floor_value(30.0, Floor{-1.0, 15.0}, kMarket, kProject), Error);
    EXPECT_THROW((void)fixed_price_value(30.0, FixedPrice{25.0, -1.0}, kMarket, kProject), Error);
    EXPECT_THROW((void)floor_coefficients(Floor{0.0, 15.0}, kMarket, kProject), Error);
    EXPECT_THROW((void)finite_collar_value(0.0, kCollar, kMarket, kProject), Error);
    try {
        (void)finite_collar_value(30.0, Collar{30.0, 20.0, 15.0}, kMarket, kProject);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidParameters);
    }
}

}  // namespace
}  // namespace feedin
