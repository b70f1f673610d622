#pragma once

#include <string>
#include <vector>

#include "ebfsi/config.hpp"
#include "ebfsi/coupling.hpp"

namespace ebfsi {

// Benchmark setups. `resolution` is the number of cells along x.

/// 7 m periodic tube run as a one-cell strip; piston at x in [1.75, 2.25].
ScenarioConfig build_piston_1d(int resolution);

/// Sod tube on [0,1], no solid, end time 0.2.
ScenarioConfig build_sod(int resolution);

/// Mach 10 reflection off a 30 degree wedge. `aligned`: wedge is the bottom
/// wall and the shock is inclined; otherwise the shock is vertical and the
/// wedge is a fixed embedded polygon with its corner at (wall_x, 0).
ScenarioConfig build_double_mach(bool aligned, int resolution);

/// 1 m x 0.2 m channel, cylinder of diameter 0.1 on the lower wall, Mach 3 shock.
ScenarioConfig build_lift_off(int resolution);

/// 2 m x 0.5 m canal closed by two hinged doors, Mach 3 shock.
ScenarioConfig build_flapping_doors(int resolution);

/// Builder by name: piston, sod, dmr-aligned, dmr-wedge, lift-off, flapping-doors.
ScenarioConfig build_named(const std::string& name, int resolution);
std::vector<std::string> scenario_names();
int default_resolution(const std::string& name);

struct DmrFrame {
    double wall_x = 1.0 / 6.0;
    double angle = 0.0;  // wall inclination in the physical frame
};

/// Wall-frame coordinates (xi along the wall from its start, eta normal to
/// it) of a physical point.
void dmr_to_wall_frame(const DmrFrame& f, double x, double y, double& xi, double& eta);
void dmr_from_wall_frame(const DmrFrame& f, double xi, double eta, double& x, double& y);
DmrFrame dmr_frame(const ScenarioConfig& cfg, bool aligned);

struct DmrComparison {
    double l1_relative = 0.0;  // sum |rho_a - rho_w| / sum |rho_a| over the window
    long samples = 0;
};

/// Density of the aligned run against the wedge run, both mapped to the wall
/// frame. Samples are the aligned cell centres with xi in [0, xi_max] and
/// eta in [0, eta_max]; the wedge field is interpolated bilinearly from its
/// non-solid cell centres.
DmrComparison compare_dmr(const CutCellField& aligned, const DmrFrame& fa, const CutCellField& wedge,
                          const DmrFrame& fw, double xi_max, double eta_max);

}  // namespace ebfsi
