#pragma once

#include "qmhd/config.hpp"
#include "qmhd/manufactured.hpp"

namespace qmhd {

/// Sod shock tube: (rho, p) = (1, 1) left of the midpoint, (0.125, 0.1) right; u = B = 0.
FieldState sod_state(const Grid& grid, const EosModel& eos);

/// Brio–Wu MHD shock tube: (rho, p, B_y) = (1, 1, 1) left, (0.125, 0.1, −1) right,
/// B_x = 0.75, u = 0. Conventionally run with gamma = 2.
FieldState briowu_state(const Grid& grid, const EosModel& eos);

/// Spatially uniform state with non-zero velocity and field.
FieldState uniform_state(const Grid& grid, const EosModel& eos);

/// Initial state for the configured scenario on the given grid.
FieldState initial_state(const RunConfig& cfg, const Grid& grid);

/// The manufactured scenario's analytic state for `cfg` on `grid`.
ManufacturedState manufactured_for(const RunConfig& cfg, const Grid& grid);

}  // namespace qmhd
