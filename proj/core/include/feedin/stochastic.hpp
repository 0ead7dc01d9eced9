#pragma once

// Building blocks shared by every contract: the characteristic roots of the
// pricing ODE for a geometric Brownian motion price, the standard normal CDF
// and the horizon terms d_beta.
//
// Units: rates are continuously compounded per year, prices are
// currency/MWh, output is MWh/year and values are in currency.

namespace feedin {

/// Risk-neutral GBM dynamics dP = mu P dt + sigma P dW, discounted at r.
struct MarketParams {
    double mu = 0.0;
    double sigma = 0.19;
    double r = 0.05;

    friend bool operator==(const MarketParams&, const MarketParams&) = default;
};

struct ProjectParams {
    double Q = 5256.0;       // MWh/year
    double I = 3'000'000.0;  // currency

    friend bool operator==(const ProjectParams&, const ProjectParams&) = default;
};

/// beta1 > 1 and beta2 < 0 solve 0.5 s^2 b(b-1) + mu b - r = 0.
struct CharacteristicRoots {
    double beta1;
    double beta2;
};

/// Throws InvalidParameters unless sigma > 0 and r > mu.
void validate(const MarketParams& market);
void validate(const ProjectParams& project);

[[nodiscard]] CharacteristicRoots beta_roots(const MarketParams& market);

/// Positive root of 0.5 s^2 e(e-1) + mu e - (r + lambda) = 0. Equals beta1
/// for lambda = 0 and grows strictly with lambda.
[[nodiscard]] double eta_root(const MarketParams& market, double lambda);

/// Standard normal CDF, absolute error below 1e-12 (erfc based).
[[nodiscard]] double norm_cdf(double x) noexcept;

/// Phi(hi) - Phi(lo) for lo <= hi, evaluated on whichever tail keeps the
/// difference free of cancellation.
[[nodiscard]] double norm_mass(double lo, double hi) noexcept;

/// [ln(P/X) + (mu + sigma^2 (beta - 1/2)) T] / (sigma sqrt(T)).
/// Requires P, X, T > 0; callers handle T = 0 themselves.
[[nodiscard]] double d_beta(double beta, double P, double X, const MarketParams& market, double T);

/// Left-hand side of the characteristic quadratic with discount rate r + lambda.
[[nodiscard]] double characteristic_residual(const MarketParams& market, double root, double lambda = 0.0) noexcept;

}  // namespace feedin
