#include "ebfsi/coupling.hpp"

#include <stdexcept>

#include "ebfsi/diagnostics.hpp"

namespace ebfsi {

Polygon body_outline(const BodyState& b, const Grid& grid) {
    Polygon p(b.reference.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = b.body.to_world(b.reference[k]);
    return snap_to_grid(std::move(p), grid);
}

void CutCellField::refresh_geometry() {
    std::vector<Polygon> outlines;
    outlines.reserve(bodies.size());
    for (const BodyState& b : bodies) outlines.push_back(body_outline(b, grid));
    geom = build_geometry(outlines, grid);
}

FluxVector boundary_flux(const BoundaryFace& f) {
    if (!f.has_pressures()) throw std::invalid_argument("boundary_flux: face has no pressures");
    const double fx = f.p_bar_x * f.n.x;
    const double fy = f.p_bar_y * f.n.y;
    return {0.0, fx, fy, f.V_half.x * fx + f.V_half.y * fy};
}

FluxModification apply_flux_modification(const CutCellBalance& c) {
    FluxModification m;
    const double beta = 1.0 - c.alpha_np1;
    m.content = beta * c.w_n;
    m.content += (c.dt / c.dx) * ((1.0 - c.kappa_l) * c.f_l - (1.0 - c.kappa_r) * c.f_r);
    m.content += (c.dt / c.dy) * ((1.0 - c.kappa_b) * c.f_b - (1.0 - c.kappa_t) * c.f_t);
    m.content += (c.dt / (c.dx * c.dy)) * c.boundary_flux_sum;
    m.content += c.swept_sum;
    m.covered = c.alpha_np1 == 1.0;
    if (!m.covered) m.dw = (1.0 / beta) * m.content - c.w_n;
    return m;
}

StepReport coupled_step(CutCellField& field, double dt, const CouplingOptions& opt) {
    const Grid& grid = field.grid;
    if (!(dt > 0.0)) throw std::invalid_argument("coupled_step: dt must be positive");
    StepReport rep;
    rep.step = field.step;
    rep.t = field.t;
    rep.dt = dt;
    rep.fluid_before = fluid_totals(field);

    // (1) Fluxes on the whole Cartesian grid, solid cells refilled from the fluid.
    Array2<Conserved> w_ext = field.w;
    extrapolate_into_solid(w_ext, field.geom.alpha);
    const StrangResult sweep = strang_step_2d(w_ext, grid, dt, field.t, opt.scheme, opt.gas, opt.bc,
                                              sweep_order_for_step(field.step), opt.exec, &field.geom.alpha);

    // (2)-(3) Loads from the level-n outline, then the solid advance.
    const std::size_t nb = field.bodies.size();
    std::vector<Polygon> outline_n(nb), outline_np1(nb);
    std::vector<BodyState> bodies_np1 = field.bodies;
    rep.loads.resize(nb);
    for (std::size_t b = 0; b < nb; ++b) {
        const BodyState& bs = field.bodies[b];
        outline_n[b] = body_outline(bs, grid);
        std::vector<BoundaryFace> faces = subdivide_boundary(outline_n[b], outline_n[b], bs.reference, grid,
                                                             static_cast<int>(b));
        std::erase_if(faces, [](const BoundaryFace& f) { return f.cell_n < 0; });
        for (BoundaryFace& f : faces) {
            f.p_bar_x = sweep.p_x[f.cell_n];
            f.p_bar_y = sweep.p_y[f.cell_n];
        }
        rep.loads[b] = accumulate_pressure_loads(faces, bs.body);
        RigidBody body = rattle_advance_positions(bs.body, rep.loads[b], dt);
        body = rattle_finalize_velocities(body, rep.loads[b], dt);
        bodies_np1[b].body = body;
        outline_np1[b] = body_outline(bodies_np1[b], grid);
    }

    // (4) Geometry at n+1, refined faces, swept content.
    const CutCellGeometry geom_np1 = build_geometry(outline_np1, grid);
    const long ncell = grid.cells();
    std::vector<Conserved> face_sum(static_cast<std::size_t>(ncell));
    std::vector<Conserved> swept_sum(static_cast<std::size_t>(ncell));
    Conserved exchange{};
    for (std::size_t b = 0; b < nb; ++b) {
        const BodyState& bs = bodies_np1[b];
        std::vector<BoundaryFace> faces =
            subdivide_boundary(outline_n[b], outline_np1[b], bs.reference, grid, static_cast<int>(b));
        for (BoundaryFace& f : faces) {
            const long src = f.cell_n >= 0 ? f.cell_n : f.cell_np1;
            const long dst = f.cell_np1 >= 0 ? f.cell_np1 : f.cell_n;
            f.p_bar_x = sweep.p_x[src];
            f.p_bar_y = sweep.p_y[src];
            f.V_half = face_velocity(bs.body, f);
            const Conserved sf = f.S * boundary_flux(f);
            face_sum[dst] += sf;
            exchange -= dt * sf;
            for (const SweptContribution& s : swept_contributions(f, w_ext, grid)) swept_sum[dst] += s.dw;
        }
    }
    rep.solid_exchange = exchange;

    // (5) Cut-cell balance, mixing, admissibility.
    Array2<Conserved> content(grid.nx, grid.ny);
    const CutCellGeometry& g1 = geom_np1;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const long c = grid.index(i, j);
            CutCellBalance cb;
            cb.alpha_np1 = g1.alpha(i, j);
            cb.kappa_l = g1.kappa_l(i, j);
            cb.kappa_r = g1.kappa_r(i, j);
            cb.kappa_b = g1.kappa_b(i, j);
            cb.kappa_t = g1.kappa_t(i, j);
            cb.f_l = sweep.fx(i, j);
            cb.f_r = sweep.fx(i + 1, j);
            cb.f_b = sweep.fy(i, j);
            cb.f_t = sweep.fy(i, j + 1);
            cb.w_n = w_ext(i, j);
            cb.boundary_flux_sum = face_sum[c];
            cb.swept_sum = swept_sum[c];
            cb.dt = dt;
            cb.dx = grid.dx;
            cb.dy = grid.dy;
            content(i, j) = apply_flux_modification(cb).content;
            const bool was_solid = field.geom.alpha(i, j) == 1.0;
            const bool is_solid = cb.alpha_np1 == 1.0;
            if (!was_solid && is_solid) ++rep.newly_covered;
            if (was_solid && !is_solid) ++rep.newly_uncovered;
        }
    }

    Conserved inflow{};
    for (int j = 0; j < grid.ny; ++j) {
        inflow += (dt * grid.dy * (1.0 - g1.kappa_x(0, j))) * sweep.fx(0, j);
        inflow -= (dt * grid.dy * (1.0 - g1.kappa_x(grid.nx, j))) * sweep.fx(grid.nx, j);
    }
    for (int i = 0; i < grid.nx; ++i) {
        inflow += (dt * grid.dx * (1.0 - g1.kappa_y(i, 0))) * sweep.fy(i, 0);
        inflow -= (dt * grid.dx * (1.0 - g1.kappa_y(i, grid.ny))) * sweep.fy(i, grid.ny);
    }
    rep.domain_inflow = inflow;

    MixingOutcome mixed = mix_small_cells(content, g1, field.geom.alpha, opt.mixing, &opt.gas);
    rep.small_cells = mixed.small_cells;
    rep.mixing_groups = mixed.groups;
    for (long c = 0; c < ncell; ++c) {
        if (mixed.covered[c]) {
            mixed.w[c] = w_ext[c];
            continue;
        }
        primitive_from_conserved(mixed.w[c], opt.gas, c);  // throws on inadmissible state
    }

    rep.fluid_after = fluid_totals(mixed.w, g1.alpha, grid);

    // Commit.
    field.w = std::move(mixed.w);
    field.geom = geom_np1;
    field.bodies = std::move(bodies_np1);
    field.t += dt;
    ++field.step;
    return rep;
}

}  // namespace ebfsi
