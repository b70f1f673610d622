#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ebfsi/flux.hpp"
#include "ebfsi/grid.hpp"
#include "ebfsi/state.hpp"

namespace ebfsi {

enum class BoundaryKind { periodic, transmissive, reflective, inflow };

struct GhostRule {
    BoundaryKind kind = BoundaryKind::transmissive;
    Conserved state{};  // used by inflow
};

/// Condition on one side of the domain. `profile`, when set, overrides
/// `kind`/`inflow` and may vary along the side and in time.
struct SideCondition {
    BoundaryKind kind = BoundaryKind::transmissive;
    Conserved inflow{};
    std::function<GhostRule(double along, double t)> profile;

    static SideCondition periodic() { return {BoundaryKind::periodic, {}, {}}; }
    static SideCondition transmissive() { return {BoundaryKind::transmissive, {}, {}}; }
    static SideCondition reflective() { return {BoundaryKind::reflective, {}, {}}; }
    static SideCondition fixed_inflow(const Conserved& w) { return {BoundaryKind::inflow, w, {}}; }

    GhostRule rule_at(double along, double t) const {
        if (profile) return profile(along, t);
        return {kind, inflow};
    }
};

struct DomainBoundary {
    SideCondition left = SideCondition::transmissive();
    SideCondition right = SideCondition::transmissive();
    SideCondition bottom = SideCondition::transmissive();
    SideCondition top = SideCondition::transmissive();

    static DomainBoundary all(const SideCondition& s) { return {s, s, s, s}; }
    /// Throws when only one side of a pair is periodic.
    void validate() const;
};

enum class Execution { serial, parallel };

struct SweepOutput {
    std::vector<FluxVector> fluxes;  // n + 1 interfaces
    std::vector<Conserved> updated;  // n cells
};

/// One conservative 1D update of `row` along `axis`.
/// `along` is the transverse coordinate of the row (for position-dependent
/// boundary profiles), `t` the time at the start of the sweep.
SweepOutput sweep_1d(std::span<const Conserved> row, double dt, double dx, const FluxScheme& scheme,
                     const GasModel& gas, const SideCondition& lo, const SideCondition& hi,
                     Axis axis = Axis::x, double along = 0.0, double t = 0.0);

enum class SweepOrder { xy, yx };

/// Result of one split step on the plain Cartesian grid.
struct StrangResult {
    Array2<FluxVector> fx;   // (nx+1) x ny, x-interfaces; fx(i, j) is the left face of cell (i, j)
    Array2<FluxVector> fy;   // nx x (ny+1), y-interfaces; fy(i, j) is the bottom face of cell (i, j)
    Array2<Conserved> updated;
    Array2<double> p_x;      // pressure of the state fed to the x sweep, per cell
    Array2<double> p_y;      // pressure of the state fed to the y sweep, per cell
};

/// Directional split step: x then y (SweepOrder::xy) or y then x.
/// Alternating the order between consecutive steps gives Strang splitting.
/// With `alpha`, cells with alpha > 0 whose intermediate state is not
/// admissible enter the second pass with their input state.
StrangResult strang_step_2d(const Array2<Conserved>& w, const Grid& grid, double dt, double t,
                            const FluxScheme& scheme, const GasModel& gas, const DomainBoundary& bc,
                            SweepOrder order, Execution exec = Execution::parallel,
                            const Array2<double>* alpha = nullptr);

/// Order used at step `step_index` (x-y, y-x, x-y, ...).
inline SweepOrder sweep_order_for_step(long step_index) {
    return step_index % 2 == 0 ? SweepOrder::xy : SweepOrder::yx;
}

/// CFL time step over fully fluid cells (alpha == 0 when `alpha` is given).
double stable_dt(const Array2<Conserved>& w, const Grid& grid, const GasModel& gas, double cfl,
                 const Array2<double>* alpha = nullptr);

}  // namespace ebfsi
