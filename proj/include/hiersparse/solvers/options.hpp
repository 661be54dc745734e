#pragma once
#include <hiersparse/core/types.hpp>

#include <vector>

namespace hiersparse {

struct SolverOptions {
    /// Convergence tolerance on the sup-norm change of the iterate.
    double tol = 1e-8;
    /// Inner iteration cap (sweeps for coordinate descent, steps for proximal gradient).
    int max_iter = 10000;
    /// Outer (EM) iteration cap.
    int outer_max_iter = 100;
    /// Proximal gradient starts at this step and multiplies it by `backtrack_factor` until
    /// the sufficient-decrease condition holds.
    double initial_step = 1.0;
    double backtrack_factor = 0.5;
    int max_backtracks = 80;
    /// Keep the inner objective after every sweep / accepted step.
    bool record_objective = false;
};

/// Outcome of an inner solve. On non-convergence `coef` is the last iterate.
struct SolveReport {
    Vector coef;
    int iterations = 0;
    bool converged = false;
    double last_change = 0.0;
    /// Proximal gradient only: backtracking found no acceptable step.
    bool line_search_failed = false;
    std::vector<double> objective;
};

} // namespace hiersparse
