#ifndef HUBFLOW_LP_ORACLE_HPP
#define HUBFLOW_LP_ORACLE_HPP

#include "hubflow/lp.hpp"

namespace hubflow {

/// Brute-force reference for small programs: enumerates every combination
/// of columns fixed at a bound, solves the square subsystem of the free
/// columns, keeps the best feasible candidate. Exponential; requires
/// equality rows only, cols <= 10 and rows <= 12 (throws otherwise).
///
/// Unboundedness is detected by re-running the enumeration with two
/// artificial boxes on the unbounded columns: a strictly better objective
/// on the larger box means a ray exists.
Solution oracle_enumerate(const LinearProgram& lp);

}  // namespace hubflow

#endif
