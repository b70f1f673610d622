#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebfsi/config.hpp"
#include "ebfsi/coupling.hpp"
#include "ebfsi/diagnostics.hpp"

namespace ebfsi {

/// Failure inside the time loop, tagged with the step and time it occurred at.
class SimulationError : public std::runtime_error {
public:
    SimulationError(const std::string& what, long step, double t);
    long step() const noexcept { return step_; }
    double time() const noexcept { return t_; }

private:
    long step_;
    double t_;
};

struct BodySample {
    double t = 0.0;
    double x = 0.0, y = 0.0;
    double theta = 0.0;  // unwrapped rotation angle
    double vx = 0.0, vy = 0.0;
    double omega = 0.0;
};

/// Largest speed of the outline vertices at the current pose.
double max_surface_speed(const BodyState& b);

class Simulation {
public:
    explicit Simulation(const ScenarioConfig& cfg);

    const ScenarioConfig& config() const { return cfg_; }
    const CutCellField& field() const { return field_; }
    CouplingOptions& options() { return opt_; }
    const CouplingOptions& options() const { return opt_; }
    const ConservationLedger& ledger() const { return ledger_; }
    /// trajectories()[b] holds one sample per step plus the initial one.
    const std::vector<std::vector<BodySample>>& trajectories() const { return traj_; }

    bool finished() const;
    /// CFL step over fully fluid cells and body surface speeds, clipped to
    /// the end time.
    double next_dt() const;
    StepReport step();
    StepReport step(double dt);
    /// Steps until finished; `observer` is called after every step.
    void run(const std::function<void(const Simulation&, const StepReport&)>& observer = {});

    double solid_kinetic_energy() const;

private:
    void sample_bodies();

    ScenarioConfig cfg_;
    CouplingOptions opt_;
    CutCellField field_;
    ConservationLedger ledger_;
    std::vector<std::vector<BodySample>> traj_;
};

}  // namespace ebfsi
