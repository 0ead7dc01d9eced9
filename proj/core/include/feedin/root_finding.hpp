#pragma once

#include <functional>
#include <span>
#include <string_view>

namespace feedin {

/// Which equation produced a trigger. The first three name the region of the
/// perpetual contract formula in force at the trigger.
enum class Branch { BelowFloor, Interior, AboveCap, ClosedForm, Single };

[[nodiscard]] std::string_view to_string(Branch branch) noexcept;

struct ThresholdResult {
    double trigger = 0.0;
    Branch branch = Branch::Single;
    // (F(P*) - (V(P*) - I)) / I
    double vm_residual = 0.0;
    // (F'(P*) - V'(P*)) / V'(P*)
    double sp_residual = 0.0;
    int iterations = 0;
};

/// A residual that is only meaningful on [lo, hi].
struct BranchEquation {
    Branch branch;
    double lo;
    double hi;
    std::function<double(double)> residual;
};

struct BranchSolverOptions {
    int probes_per_region = 512;
    double relative_tolerance = 1e-10;
    int max_iterations = 200;
};

/// Finds the unique region-consistent root over all branch equations.
///
/// Each region is scanned on a log-spaced grid for up-crossings (residual
/// going from negative to non-negative with increasing price); each crossing
/// is refined by a bracketing TOMS 748 solve. Down-crossings are ignored:
/// with the residual conventions used here they mark local minima of the
/// option coefficient, not an exercise boundary. Roots shared by adjacent
/// regions at their common endpoint count once.
///
/// Throws Error(NoRoot) when no region yields a root and
/// Error(MultipleRoots) with all candidates when more than one does.
/// The residual fields of the result are left at zero.
[[nodiscard]] ThresholdResult solve_branch_system(std::span<const BranchEquation> equations,
                                                  const BranchSolverOptions& options = {});

/// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign, to the
/// requested relative tolerance.
[[nodiscard]] double refine_root(const std::function<double(double)>& f, double lo, double hi, double f_lo,
                                 double f_hi, const BranchSolverOptions& options, int* iterations = nullptr);

}  // namespace feedin
