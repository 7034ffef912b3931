#pragma once

#include <string>
#include <vector>

namespace retint {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // the quantity compared against the threshold
    double threshold = 0.0;
    std::string detail;
};

/// Runs the analytical self-consistency suite: normalization quadratures
/// of the interval distribution, the gamma = 1 exponential reductions,
/// the harmonic-sum limit, transcendental-solver residuals and cutoff
/// integrals on a (gamma, mean_r) grid, incomplete-gamma identities, and
/// the log-form identity of the distribution.
std::vector<CheckResult> run_validation();

}  // namespace retint
