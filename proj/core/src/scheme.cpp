#include "feedin/scheme.hpp"

#include <cmath>
#include <string>

#include "feedin/error.hpp"

namespace feedin {

namespace {
template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

SchemeKind kind_of(const Scheme& scheme) noexcept {
    return std::visit(overloaded{
                          [](const FixedPrice&) { return SchemeKind::FixedPrice; },
                          [](const FixedPremium&) { return SchemeKind::FixedPremium; },
                          [](const Floor&) { return SchemeKind::Floor; },
                          [](const Collar&) { return SchemeKind::Collar; },
                      },
                      scheme);
}

std::string_view label(SchemeKind kind) noexcept {
    switch (kind) {
        case SchemeKind::FixedPrice: return "fixed";
        case SchemeKind::FixedPremium: return "premium";
        case SchemeKind::Floor: return "floor";
        case SchemeKind::Collar: return "collar";
    }
    return "unknown";
}

SchemeKind parse_scheme_kind(std::string_view text) {
    for (auto kind : {SchemeKind::FixedPrice, SchemeKind::FixedPremium, SchemeKind::Floor, SchemeKind::Collar}) {
        if (text == label(kind)) {
            return kind;
        }
    }
    throw Error(ErrorKind::ValidationError,
                "unknown scheme '" + std::string(text) + "' (expected fixed, premium, floor or collar)");
}

Scheme make_scheme(SchemeKind kind, double F, double C, double T) {
    switch (kind) {
        case SchemeKind::FixedPrice: return FixedPrice{F, T};
        case SchemeKind::FixedPremium: return FixedPremium{F, T};
        case SchemeKind::Floor: return Floor{F, T};
        case SchemeKind::Collar: return Collar{F, C, T};
    }
    return FixedPrice{F, T};
}

double tariff(const Scheme& scheme) noexcept {
    return std::visit([](const auto& s) { return s.F; }, scheme);
}

double horizon(const Scheme& scheme) noexcept {
    return std::visit([](const auto& s) { return s.T; }, scheme);
}

Scheme reduced(const Scheme& scheme, double omega, double omega_C) {
    require(omega >= 0.0 && omega <= 1.0, "omega must lie in [0, 1]");
    require(omega_C >= 0.0 && omega_C <= 1.0, "omega_C must lie in [0, 1]");
    return std::visit(overloaded{
                          [&](const Collar& s) -> Scheme { return Collar{omega * s.F, omega_C * s.C, s.T}; },
                          [&](const auto& s) -> Scheme {
                              auto out = s;
                              out.F = omega * s.F;
                              return out;
                          },
                      },
                      scheme);
}

void validate(const Scheme& scheme) {
    const double F = tariff(scheme);
    const double T = horizon(scheme);
    require(std::isfinite(F) && F >= 0.0, "tariff F must be finite and non-negative");
    require(std::isfinite(T) && T >= 0.0, "duration T must be finite and non-negative");
    if (const auto* collar = std::get_if<Collar>(&scheme)) {
        require(std::isfinite(collar->C), "cap C must be finite");
        require(collar->C >= collar->F, "cap C must not be below the floor F");
    }
}

}  // namespace feedin
