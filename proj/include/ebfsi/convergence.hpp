#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ebfsi/simulation.hpp"

namespace ebfsi {

struct ConvergenceRow {
    int resolution = 0;
    double h = 0.0;
    std::vector<double> values;  // one per column
};

struct ConvergenceReport {
    std::string family;
    std::vector<std::string> columns;
    std::vector<ConvergenceRow> rows;
    std::vector<std::pair<std::string, double>> orders;
    double seconds = 0.0;

    double order(const std::string& name) const;
    void print(std::ostream& os) const;
};

/// Cubic Hermite interpolation of a body coordinate from (t, x, v) samples.
double hermite_position(const std::vector<BodySample>& traj, double t, bool y_component = false);

/// Piston self-convergence against the `reference` resolution, which must be
/// an integer multiple of every level. Columns: position_linf, pressure_l1.
ConvergenceReport piston_convergence(const std::vector<int>& levels, int reference);

/// Sod tube against the exact solution. Column: density_l1.
ConvergenceReport sod_convergence(const std::vector<int>& levels);

/// Lift-off final cylinder centres. Columns: x, y, distance to the previous level.
ConvergenceReport lift_off_convergence(const std::vector<int>& levels);

/// Dispatch by family name (piston, sod, lift-off). For piston the finest
/// entry of `levels` is used as the reference.
ConvergenceReport run_convergence_suite(const std::string& family, std::vector<int> levels);

}  // namespace ebfsi
