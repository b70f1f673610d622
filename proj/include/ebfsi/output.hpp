#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ebfsi/coupling.hpp"
#include "ebfsi/simulation.hpp"

namespace ebfsi {

/// Legacy VTK structured points with cell data rho, u, v, p, alpha.
/// Fully solid cells are written with their stored state.
void write_vtk(std::ostream& os, const CutCellField& field, const GasModel& gas);

/// One row per cell: i, j, x, y, alpha, rho, u, v, p.
void write_field_csv(std::ostream& os, const CutCellField& field, const GasModel& gas);

/// Columns: body, t, x, y, theta, vx, vy, omega.
void write_trajectory_csv(std::ostream& os, const std::vector<std::string>& names,
                          const std::vector<std::vector<BodySample>>& traj);

struct RunSummary {
    long steps = 0;
    double t = 0.0;
    std::vector<std::string> files;
};

/// Runs `cfg` to completion and writes snapshots, ledger.csv and
/// trajectory.csv into `out_dir` (created if missing).
RunSummary run_scenario(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream* log = nullptr);

}  // namespace ebfsi
