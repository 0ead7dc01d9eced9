#include "feedin/stochastic.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "feedin/error.hpp"

namespace feedin {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidParameters: return "invalid-parameters";
        case ErrorKind::NoRoot: return "no-root";
        case ErrorKind::MultipleRoots: return "multiple-roots";
        case ErrorKind::SubsidyExceedsCost: return "subsidy-exceeds-cost";
        case ErrorKind::InvalidConfig: return "invalid-config";
        case ErrorKind::ParseError: return "parse-error";
        case ErrorKind::ValidationError: return "validation-error";
    }
    return "unknown";
}

void validate(const MarketParams& market) {
    require(std::isfinite(market.mu) && std::isfinite(market.sigma) && std::isfinite(market.r),
            "market parameters must be finite");
    require(market.sigma > 0.0, "sigma must be positive");
    require(market.r > market.mu, "r must exceed mu");
}

void validate(const ProjectParams& project) {
    require(project.Q > 0.0 && std::isfinite(project.Q), "Q must be positive");
    require(project.I > 0.0 && std::isfinite(project.I), "I must be positive");
}

namespace {

// Roots of a x^2 + b x + c with a > 0, c < 0, in the cancellation-free form.
CharacteristicRoots solve_quadratic(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double x1 = q / a;
    double x2 = c / q;
    if (x1 < x2) {
        std::swap(x1, x2);
    }
    return {x1, x2};
}

CharacteristicRoots roots_with_rate(const MarketParams& market, double rate) {
    const double half_var = 0.5 * market.sigma * market.sigma;
    return solve_quadratic(half_var, market.mu - half_var, -rate);
}

}  // namespace

CharacteristicRoots beta_roots(const MarketParams& market) {
    validate(market);
    return roots_with_rate(market, market.r);
}

double eta_root(const MarketParams& market, double lambda) {
    validate(market);
    require(lambda >= 0.0 && std::isfinite(lambda), "lambda must be non-negative");
    if (lambda == 0.0) {
        return roots_with_rate(market, market.r).beta1;
    }
    return roots_with_rate(market, market.r + lambda).beta1;
}

double norm_cdf(double x) noexcept {
    if (std::isnan(x)) {
        return x;
    }
    return 0.5 * std::erfc(-x * std::numbers::sqrt2 * 0.5);
}

double norm_mass(double lo, double hi) noexcept {
    if (hi <= lo) {
        return 0.0;
    }
    if (lo > 0.0) {
        return norm_cdf(-lo) - norm_cdf(-hi);
    }
    return norm_cdf(hi) - norm_cdf(lo);
}

double d_beta(double beta, double P, double X, const MarketParams& market, double T) {
    require(P > 0.0, "d_beta: price must be positive");
    require(X > 0.0, "d_beta: boundary price must be positive");
    require(T > 0.0, "d_beta: horizon must be positive");
    const double s = market.sigma;
    return (std::log(P / X) + (market.mu + s * s * (beta - 0.5)) * T) / (s * std::sqrt(T));
}

double characteristic_residual(const MarketParams& market, double root, double lambda) noexcept {
    const double s2 = market.sigma * market.sigma;
    return 0.5 * s2 * root * (root - 1.0) + market.mu * root - (market.r + lambda);
}

}  // namespace feedin
