#pragma once

#include "ebfsi/config.hpp"
#include "ebfsi/diagnostics.hpp"

namespace ebfsi {

struct ConsistencyResult {
    long steps = 0;
    double fluid_change = 0.0;     // max-norm change of (rho, u, v, p) over fluid cells
    double velocity_change = 0.0;  // max change of body V and angular velocity
    double max_mass_residual = 0.0;
    double max_balance_residual = 0.0;  // momentum and energy
};

/// Irregular polygon translating with the surrounding uniform flow in a
/// periodic box.
ScenarioConfig co_moving_config(int nx, int ny);

/// Fixed half-plane wall inclined at 30 degrees, uniform flow along it.
ScenarioConfig free_slip_config(int n);

/// Runs `steps` steps and measures the change of the uniform state.
ConsistencyResult run_consistency(const ScenarioConfig& cfg, long steps, Execution exec = Execution::parallel);

}  // namespace ebfsi
