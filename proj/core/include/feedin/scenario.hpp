#pragma once

// Scenario files: either a flat JSON object or `key = value` lines with `#`
// comments. Keys:
//
//   r mu sigma I Q F C T P lambda omega omega_C   numbers
//   scheme                                        fixed | premium | floor | collar
//   ru                                            true | false
//   sweep_param sweep_lo sweep_hi sweep_n         optional sweep
//
// Anything missing takes the base-case value below; an empty file is the
// base case.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "feedin/scheme.hpp"
#include "feedin/stochastic.hpp"
#include "feedin/thresholds.hpp"

namespace feedin {

struct SweepSpec {
    std::string param;
    double lo = 0.0;
    double hi = 0.0;
    int n_points = 0;

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Annual output 131,400 currency at 25/MWh fixes Q; a 300,000 currency
/// annual revenue cap fixes C.
inline constexpr double kBaseCap = 300'000.0 / 5256.0;

struct Scenario {
    MarketParams market;
    ProjectParams project;
    SchemeKind scheme = SchemeKind::Collar;
    double F = 25.0;
    double C = kBaseCap;
    double T = 15.0;
    // Price used by single valuations.
    double P = 30.0;
    RegulatoryParams regulatory;
    bool ru = true;
    std::optional<SweepSpec> sweep;

    [[nodiscard]] Scheme contract() const { return make_scheme(scheme, F, C, T); }
    [[nodiscard]] Scheme contract(SchemeKind kind) const { return make_scheme(kind, F, C, T); }
    [[nodiscard]] std::optional<RegulatoryParams> reg() const {
        return ru ? std::optional<RegulatoryParams>(regulatory) : std::nullopt;
    }

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Names accepted by set_parameter and as sweep_param.
[[nodiscard]] bool is_sweep_parameter(std::string_view name) noexcept;

/// Sets one of lambda, omega, omega_C, F, C, sigma, T, P.
void set_parameter(Scenario& scenario, std::string_view name, double value);

/// Throws ValidationError listing every violated invariant.
void validate(const Scenario& scenario);

/// Throws ParseError (with line number and key) or ValidationError.
[[nodiscard]] Scenario parse_scenario(std::string_view text);
[[nodiscard]] Scenario load_scenario(const std::filesystem::path& path);

/// key = value form; numbers are written in shortest round-trip form so
/// parse_scenario(format_scenario(s)) == s.
[[nodiscard]] std::string format_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

}  // namespace feedin
