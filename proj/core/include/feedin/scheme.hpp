#pragma once

#include <string_view>
#include <variant>

namespace feedin {

// Profit flow while the contract runs, per MWh:
//   FixedPrice    F
//   FixedPremium  P + F
//   Floor         max(P, F)
//   Collar        min(max(P, F), C)
// After T years the producer sells at the market price P.

struct FixedPrice {
    double F;
    double T;
    friend bool operator==(const FixedPrice&, const FixedPrice&) = default;
};

struct FixedPremium {
    double F;
    double T;
    friend bool operator==(const FixedPremium&, const FixedPremium&) = default;
};

struct Floor {
    double F;
    double T;
    friend bool operator==(const Floor&, const Floor&) = default;
};

struct Collar {
    double F;
    double C;
    double T;
    friend bool operator==(const Collar&, const Collar&) = default;
};

using Scheme = std::variant<FixedPrice, FixedPremium, Floor, Collar>;

enum class SchemeKind { FixedPrice, FixedPremium, Floor, Collar };

[[nodiscard]] SchemeKind kind_of(const Scheme& scheme) noexcept;

/// Short label used on the command line and in CSV output:
/// "fixed", "premium", "floor", "collar".
[[nodiscard]] std::string_view label(SchemeKind kind) noexcept;

/// Parses a label produced by label(); throws ValidationError otherwise.
[[nodiscard]] SchemeKind parse_scheme_kind(std::string_view text);

/// Builds a scheme of the given kind. C is ignored unless kind is Collar.
[[nodiscard]] Scheme make_scheme(SchemeKind kind, double F, double C, double T);

[[nodiscard]] double tariff(const Scheme& scheme) noexcept;
[[nodiscard]] double horizon(const Scheme& scheme) noexcept;

/// Contract after a regulatory cut: tariff (floor) scaled by omega and, for
/// collars, cap scaled by omega_C.
[[nodiscard]] Scheme reduced(const Scheme& scheme, double omega, double omega_C);

/// F >= 0, T >= 0 and C >= F for collars; throws InvalidParameters.
void validate(const Scheme& scheme);

}  // namespace feedin
