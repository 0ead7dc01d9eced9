#include "feedin/root_finding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "feedin/error.hpp"

namespace feedin {

std::string_view to_string(Branch branch) noexcept {
    switch (branch) {
        case Branch::BelowFloor: return "below-floor";
        case Branch::Interior: return "interior";
        case Branch::AboveCap: return "above-cap";
        case Branch::ClosedForm: return "closed-form";
        case Branch::Single: return "single";
    }
    return "unknown";
}

double refine_root(const std::function<double(double)>& f, double lo, double hi, double f_lo, double f_hi,
                   const BranchSolverOptions& options, int* iterations) {
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    const double tol = options.relative_tolerance;
    auto converged = [tol](double a, double b) { return std::abs(b - a) <= tol * std::min(std::abs(a), std::abs(b)); };
    std::uintmax_t max_iter = static_cast<std::uintmax_t>(options.max_iterations);
    const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, converged, max_iter);
    if (iterations != nullptr) {
        *iterations = static_cast<int>(max_iter);
    }
    return 0.5 * (bracket.first + bracket.second);
}

namespace {

struct Candidate {
    double root;
    Branch branch;
    int iterations;
    double lo;
    double hi;
};

}  // namespace

ThresholdResult solve_branch_system(std::span<const BranchEquation> equations, const BranchSolverOptions& options) {
    require(options.probes_per_region >= 2, "at least two probes per region are required");
    std::vector<Candidate> found;

    for (const auto& eq : equations) {
        if (!(eq.hi > eq.lo)) {
            continue;
        }
        require(eq.lo > 0.0 && std::isfinite(eq.hi), "branch regions must be finite and positive");
        const int n = options.probes_per_region;
        const double log_lo = std::log(eq.lo);
        const double step = (std::log(eq.hi) - log_lo) / (n - 1);
        double x_prev = eq.lo;
        double f_prev = eq.residual(x_prev);
        for (int i = 1; i < n; ++i) {
            const double x = i == n - 1 ? eq.hi : std::exp(log_lo + step * i);
            const double fx = eq.residual(x);
            if (f_prev < 0.0 && fx >= 0.0) {
                int iters = 0;
                const double root = refine_root(eq.residual, x_prev, x, f_prev, fx, options, &iters);
                found.push_back({root, eq.branch, iters, eq.lo, eq.hi});
            }
            x_prev = x;
            f_prev = fx;
        }
    }

    // A root sitting exactly on a region's upper end belongs to the region
    // that starts there, when there is one.
    for (auto& c : found) {
        if (c.root < c.hi) {
            continue;
        }
        for (const auto& eq : equations) {
            if (eq.lo == c.root && eq.hi > eq.lo) {
                c.branch = eq.branch;
                c.lo = eq.lo;
                c.hi = eq.hi;
                break;
            }
        }
    }

    if (found.empty()) {
        throw Error(ErrorKind::NoRoot, "no region-consistent root in the search bracket");
    }

    std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) { return a.root < b.root; });
    std::vector<Candidate> unique;
    for (const auto& c : found) {
        if (!unique.empty()) {
            auto& last = unique.back();
            if (std::abs(c.root - last.root) <= 1e-8 * std::max(std::abs(c.root), std::abs(last.root))) {
                // A root on a shared endpoint belongs to the region that contains it half-open.
                if (!(last.root >= last.lo && last.root < last.hi)) {
                    last = c;
                }
                continue;
            }
        }
        unique.push_back(c);
    }

    if (unique.size() > 1) {
        std::vector<double> roots;
        std::ostringstream msg;
        msg << "multiple region-consistent roots:";
        for (const auto& c : unique) {
            roots.push_back(c.root);
            msg << ' ' << c.root << " (" << to_string(c.branch) << ')';
        }
        throw Error(ErrorKind::MultipleRoots, msg.str(), std::move(roots));
    }

    ThresholdResult result;
    result.trigger = unique.front().root;
    result.branch = unique.front().branch;
    result.iterations = unique.front().iterations;
    return result;
}

}  // namespace feedin
