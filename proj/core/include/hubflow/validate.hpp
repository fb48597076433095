#ifndef HUBFLOW_VALIDATE_HPP
#define HUBFLOW_VALIDATE_HPP

#include "hubflow/diagnostics.hpp"
#include "hubflow/model.hpp"

namespace hubflow {

/// Structural validation of a scenario. Returns an empty list iff every
/// type invariant holds and the LP can be assembled. Fatal diagnostics
/// block building; warnings flag degenerate but solvable structure.
Diagnostics validate(const Scenario& scenario);

/// Resolves unit-bearing process coefficients (kg per kWh of input) into
/// dimensionless exergy efficiencies using the outlet material's chemical
/// exergy. Appends one Info diagnostic per conversion with the factor
/// used. Called by the scenario loader; exposed for hand-built scenarios.
Diagnostics resolve_process_coefficients(Scenario& scenario);

}  // namespace hubflow

#endif
