#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace feedin {

enum class ErrorKind {
    InvalidParameters,
    NoRoot,
    MultipleRoots,
    // The guaranteed subsidy alone covers the investment cost, so investing
    // immediately is optimal at every price and no trigger exists.
    SubsidyExceedsCost,
    InvalidConfig,
    ParseError,
    ValidationError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, std::vector<double> candidates = {})
        : std::runtime_error(what), kind_(kind), candidates_(std::move(candidates)) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

    /// Candidate roots, populated for MultipleRoots.
    [[nodiscard]] const std::vector<double>& candidates() const noexcept { return candidates_; }

private:
    ErrorKind kind_;
    std::vector<double> candidates_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline void require(bool condition, const std::string& what) {
    if (!condition) {
        fail(ErrorKind::InvalidParameters, what);
    }
}

}  // namespace feedin
