#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebfsi/cut_cell.hpp"
#include "ebfsi/flux.hpp"
#include "ebfsi/rigid_body.hpp"
#include "ebfsi/sweep.hpp"

namespace ebfsi {

/// A body together with its outline in the initial configuration
/// (counter-clockwise, solid inside).
struct BodyState {
    std::string name;
    RigidBody body;
    Polygon reference;
};

/// Outline of the body at its current pose, snapped to the grid.
Polygon body_outline(const BodyState& b, const Grid& grid);

struct CutCellField {
    Grid grid;
    Array2<Conserved> w;
    CutCellGeometry geom;  // current level
    std::vector<BodyState> bodies;
    double t = 0.0;
    long step = 0;

    /// Recomputes `geom` from the current body poses.
    void refresh_geometry();
};

enum class MixingWeights {
    fluid_fraction,  // beta = 1 - alpha, conservative (default)
    solid_fraction,   // alpha-weighted average of the states
};

struct CouplingOptions {
    FluxScheme scheme = FluxScheme::limited_second_order();
    GasModel gas{};
    DomainBoundary bc{};
    MixingWeights mixing = MixingWeights::fluid_fraction;
    Execution exec = Execution::parallel;
};

struct StepReport {
    long step = 0;
    double t = 0.0;   // time at the start of the step
    double dt = 0.0;
    std::array<double, 4> fluid_before{};  // sum of (1-alpha) w dx dy
    std::array<double, 4> fluid_after{};
    Conserved domain_inflow{};     // content entering through the domain boundary
    Conserved solid_exchange{};    // (0, sum dP_F, sum dE_F): content taken by the solids
    std::vector<LoadSet> loads;    // per body, level-n faces
    int small_cells = 0;
    int mixing_groups = 0;
    int newly_covered = 0;
    int newly_uncovered = 0;
};

/// Fluid flux through a solid boundary face, per unit length:
/// (0, p_x n_x, p_y n_y, V . (p_x n_x, p_y n_y)).
FluxVector boundary_flux(const BoundaryFace& face);

/// Inputs of the discrete balance of one cell at level n+1.
struct CutCellBalance {
    double alpha_np1 = 0.0;
    double kappa_l = 0.0, kappa_r = 0.0, kappa_b = 0.0, kappa_t = 0.0;
    FluxVector f_l{}, f_r{}, f_b{}, f_t{};
    Conserved w_n{};
    Conserved boundary_flux_sum{};  // sum over faces of S_F f_F
    Conserved swept_sum{};          // sum of swept increments
    double dt = 0.0, dx = 1.0, dy = 1.0;
};

struct FluxModification {
    Conserved content{};  // (1 - alpha^{n+1}) w^{n+1} before mixing
    Conserved dw{};       // w^{n+1} - w^n (zero for covered cells)
    bool covered = false;
};

FluxModification apply_flux_modification(const CutCellBalance& c);

/// Nearest cell with alpha == 0 reachable through faces with a fluid
/// opening and not flagged in `excluded`; ties broken by centre distance,
/// then distance from the horizontal mid-line of the domain (farther
/// first), then row-major order. Throws std::runtime_error when none exists.
long find_target_cell(const CutCellGeometry& geom, long small_cell, std::span<const std::uint8_t> excluded = {});

struct MixingOutcome {
    Array2<Conserved> w;             // states; covered cells hold their group state
    std::vector<std::uint8_t> covered;
    std::vector<long> target;        // per cell, -1 when not mixed
    int small_cells = 0;
    int groups = 0;
};

/// Small cells: alpha > 0.5 at level n or n+1 (not covered), covered
/// cells holding content and, when `gas` is given, cut cells whose own
/// state would not be admissible. Each target and the small cells pointing at it end at
/// one common state.
MixingOutcome mix_small_cells(const Array2<Conserved>& content, const CutCellGeometry& geom_np1,
                              const Array2<double>& alpha_n, MixingWeights weights = MixingWeights::fluid_fraction,
                              const GasModel* gas = nullptr);

/// Pair mixing with fluid-fraction weights; returns the common state.
Conserved mix_pair(double beta_c, const Conserved& w_c, double beta_t, const Conserved& w_t);

/// Alpha-weighted exchange terms: M_{C,T} = a_T/(a_C+a_T) (w_T - w_C) and
/// M_{T,C} = a_C/(a_C+a_T) (w_C - w_T).
std::pair<Conserved, Conserved> alpha_exchange(double alpha_c, const Conserved& w_c, double alpha_t,
                                                 const Conserved& w_t);

/// Refills cells with alpha == 1 layer by layer from their neighbours.
void extrapolate_into_solid(Array2<Conserved>& w, const Array2<double>& alpha);

/// One step of the coupled algorithm. On error the field is left unchanged.
StepReport coupled_step(CutCellField& field, double dt, const CouplingOptions& opt);

}  // namespace ebfsi
