#ifndef HUBFLOW_SIMPLEX_HPP
#define HUBFLOW_SIMPLEX_HPP

#include <span>

#include "hubflow/lp.hpp"

namespace hubflow {

/// Two-phase revised simplex with bounded variables and a sparse LU basis
/// factorization. Deterministic: identical (lp, options) give identical
/// status, iteration count and objective.
Solution solve(const LinearProgram& lp, const SolveOptions& options = {});

struct Phase1Result {
    /// Optimal means a feasible point was found.
    SolveStatus status = SolveStatus::NumericalBreakdown;
    std::vector<double> values;
    /// Minimum total constraint violation (L1); > 0 iff infeasible.
    double infeasibility = 0.0;
    long iterations = 0;
};

/// Runs phase 1 only: drives the artificial objective to ~0 or reports the
/// residual lower bound.
Phase1Result phase1(const LinearProgram& lp, const SolveOptions& options = {});

/// Entering-variable choice. eligibility[j]: 0 not a candidate, +1 nonbasic
/// at lower bound (enters when reduced cost < -tol), -1 nonbasic at upper
/// bound (enters when reduced cost > +tol), +2 free (either sign).
/// Default rule: largest reduced-cost violation, ties to the lowest index;
/// under Bland's rule the lowest eligible index. Returns -1 when
/// dual-feasible.
int choose_entering(std::span<const double> reduced_costs,
                    std::span<const int> eligibility, bool bland, double tol);

}  // namespace hubflow

#endif
