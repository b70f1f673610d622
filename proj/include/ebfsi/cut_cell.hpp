#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "ebfsi/geometry.hpp"
#include "ebfsi/grid.hpp"
#include "ebfsi/state.hpp"

namespace ebfsi {

/// Solid volume fractions and face apertures at one time level.
struct CutCellGeometry {
    Grid grid;
    Array2<double> alpha;    // nx x ny
    Array2<double> kappa_x;  // (nx+1) x ny, vertical faces
    Array2<double> kappa_y;  // nx x (ny+1), horizontal faces

    static CutCellGeometry fluid_only(const Grid& grid);

    double kappa_l(int i, int j) const { return kappa_x(i, j); }
    double kappa_r(int i, int j) const { return kappa_x(i + 1, j); }
    double kappa_b(int i, int j) const { return kappa_y(i, j); }
    double kappa_t(int i, int j) const { return kappa_y(i, j + 1); }
};

/// Relative length below which boundary pieces are merged and vertices
/// are snapped to grid lines (times min(dx, dy)).
inline constexpr double kGeometryEpsilon = 1e-12;

/// Snaps vertices lying within kGeometryEpsilon*min(dx,dy) of a grid line onto it.
Polygon snap_to_grid(Polygon poly, const Grid& grid);

/// One piece of a body outline, lying in a single cell at level n and at
/// level n+1. Geometric attributes (S, n, X_F) are those of the level-n piece.
struct BoundaryFace {
    int body_id = 0;
    int edge = 0;        // polygon edge index
    double t0 = 0.0;     // parameter range along the edge
    double t1 = 1.0;
    Vec2 a_n{}, b_n{};       // endpoints at level n
    Vec2 a_np1{}, b_np1{};   // endpoints at level n+1
    double S = 0.0;          // length at level n
    Vec2 n{};                // unit normal at level n, solid -> fluid
    Vec2 X_F{};              // centre at level n
    Vec2 X_F0{};             // centre in the initial configuration
    long cell_n = -1;        // -1: outside the domain
    long cell_np1 = -1;
    double p_bar_x = std::numeric_limits<double>::quiet_NaN();
    double p_bar_y = std::numeric_limits<double>::quiet_NaN();
    Vec2 V_half{};

    bool has_pressures() const { return p_bar_x == p_bar_x && p_bar_y == p_bar_y; }
};

/// Splits every edge of the outline at the grid-line crossings of both
/// levels. `poly_n`, `poly_np1` and `reference` share vertex numbering
/// (counter-clockwise, solid inside). Pieces outside the domain at both
/// levels are dropped. Passing the same polygon twice gives the
/// subdivision of a single level.
std::vector<BoundaryFace> subdivide_boundary(const Polygon& poly_n, const Polygon& poly_np1,
                                             const Polygon& reference, const Grid& grid, int body_id = 0);

/// Cell owning a piece from a to b (normal n). Pieces on a grid line go
/// to the fluid side. Returns -1 outside the domain.
long owning_cell(const Vec2& a, const Vec2& b, const Vec2& n, const Grid& grid);

/// Volume fractions and apertures of the union of `solids` (disjoint,
/// counter-clockwise, already snapped) on `grid`.
CutCellGeometry build_geometry(std::span<const Polygon> solids, const Grid& grid);

struct SweptContribution {
    long cell = -1;
    Conserved dw{};  // content divided by dx*dy
};

/// Signed area of the quadrangle swept by the face: positive when the face
/// moves along its normal (into the fluid).
double swept_area(const BoundaryFace& face);

/// Integral of the piecewise-constant field over the swept quadrangle,
/// clipped per cell (each portion attached to its own cell).
std::vector<SweptContribution> swept_contributions(const BoundaryFace& face, const Array2<Conserved>& field_n,
                                                   const Grid& grid);

/// GCL residuals (r_x, r_y) of cell (i, j) for the given faces at one level.
std::pair<double, double> verify_gcl(const CutCellGeometry& geom, int i, int j,
                                     std::span<const BoundaryFace> faces_in_cell, bool use_np1 = false);

}  // namespace ebfsi
