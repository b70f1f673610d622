#include "ebfsi/sweep.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <stdexcept>

namespace ebfsi {

void DomainBoundary::validate() const {
    auto periodic = [](const SideCondition& s) { return !s.profile && s.kind == BoundaryKind::periodic; };
    if (periodic(left) != periodic(right))
        throw std::invalid_argument("boundary: left/right must both be periodic or neither");
    if (periodic(bottom) != periodic(top))
        throw std::invalid_argument("boundary: bottom/top must both be periodic or neither");
}

namespace {

// `row` is already in the x-frame (axes swapped for y sweeps).
void fill_ghosts(std::span<const Conserved> row, int g, const GhostRule& lo, const GhostRule& hi,
                 bool swapped, std::vector<Conserved>& padded) {
    const int n = static_cast<int>(row.size());
    padded.resize(static_cast<std::size_t>(n + 2 * g));
    std::copy(row.begin(), row.end(), padded.begin() + g);
    auto frame = [&](const Conserved& w) { return swapped ? swap_axes(w) : w; };
    for (int k = 0; k < g; ++k) {
        Conserved& l = padded[g - 1 - k];
        Conserved& r = padded[g + n + k];
        switch (lo.kind) {
            case BoundaryKind::periodic: l = row[((n - 1 - k) % n + n) % n]; break;
            case BoundaryKind::transmissive: l = row[0]; break;
            case BoundaryKind::reflective:
                l = row[std::min(k, n - 1)];
                l.mom_x = -l.mom_x;
                break;
            case BoundaryKind::inflow: l = frame(lo.state); break;
        }
        switch (hi.kind) {
            case BoundaryKind::periodic: r = row[k % n]; break;
            case BoundaryKind::transmissive: r = row[n - 1]; break;
            case BoundaryKind::reflective:
                r = row[std::max(n - 1 - k, 0)];
                r.mom_x = -r.mom_x;
                break;
            case BoundaryKind::inflow: r = frame(hi.state); break;
        }
    }
}

struct LineWork {
    std::vector<Conserved> line;
    std::vector<Conserved> padded;
    std::vector<FluxVector> flux;
    SweepScratch scratch;
};

// Fluxes (x-frame) and update of one line. `line` holds x-frame states.
void sweep_line(LineWork& wk, double dt_over_dx, const FluxScheme& scheme, const GasModel& gas,
                const GhostRule& lo, const GhostRule& hi, bool swapped, long cell_offset) {
    const int n = static_cast<int>(wk.line.size());
    fill_ghosts(wk.line, scheme.half_width(), lo, hi, swapped, wk.padded);
    wk.flux.resize(static_cast<std::size_t>(n + 1));
    row_interface_fluxes(wk.padded, scheme, dt_over_dx, gas, wk.flux, wk.scratch, cell_offset);

    // Cells whose update leaves the admissible set get first-order HLLE
    // fluxes on both faces; repeat until no neighbour is pushed out.
    const int g = scheme.half_width();
    for (int sweep = 0; sweep < n; ++sweep) {
        bool changed = false;
        for (int k = 0; k < n; ++k) {
            const Conserved upd = wk.line[k] - dt_over_dx * (wk.flux[k + 1] - wk.flux[k]);
            if (is_admissible(upd, gas)) continue;
            for (int q : {k, k + 1}) {
                const FluxVector f = hlle_flux(wk.padded[q + g - 1], wk.padded[q + g], gas);
                if (f != wk.flux[q]) {
                    wk.flux[q] = f;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }
}

}  // namespace

SweepOutput sweep_1d(std::span<const Conserved> row, double dt, double dx, const FluxScheme& scheme,
                     const GasModel& gas, const SideCondition& lo, const SideCondition& hi, Axis axis,
                     double along, double t) {
    if (row.empty()) throw std::invalid_argument("sweep_1d: empty row");
    if (!(dt > 0.0) || !(dx > 0.0)) throw std::invalid_argument("sweep_1d: dt and dx must be positive");
    const bool swapped = axis == Axis::y;
    LineWork wk;
    wk.line.resize(row.size());
    for (std::size_t k = 0; k < row.size(); ++k) wk.line[k] = swapped ? swap_axes(row[k]) : row[k];
    sweep_line(wk, dt / dx, scheme, gas, lo.rule_at(along, t), hi.rule_at(along, t), swapped, 0);

    SweepOutput out;
    const std::size_t n = row.size();
    out.fluxes.resize(n + 1);
    out.updated.resize(n);
    const double r = dt / dx;
    for (std::size_t q = 0; q <= n; ++q) out.fluxes[q] = swapped ? swap_axes(wk.flux[q]) : wk.flux[q];
    for (std::size_t k = 0; k < n; ++k) out.updated[k] = row[k] - r * (out.fluxes[k + 1] - out.fluxes[k]);
    return out;
}

namespace {

void x_pass(const Array2<Conserved>& in, const Grid& grid, double dt, double t, const FluxScheme& scheme,
            const GasModel& gas, const DomainBoundary& bc, Execution exec, Array2<FluxVector>& fx,
            Array2<Conserved>& out, Array2<double>& p) {
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double r = dt / grid.dx;
    auto body = [&](LineWork& wk, int j) {
        wk.line.assign(in.row(j).begin(), in.row(j).end());
        const double along = grid.yc(j);
        sweep_line(wk, r, scheme, gas, bc.left.rule_at(along, t), bc.right.rule_at(along, t), false,
                   grid.index(0, j));
        for (int i = 0; i <= nx; ++i) fx(i, j) = wk.flux[i];
        for (int i = 0; i < nx; ++i) {
            out(i, j) = in(i, j) - r * (wk.flux[i + 1] - wk.flux[i]);
            p(i, j) = pressure(in(i, j), gas);
        }
    };
    if (exec == Execution::serial) {
        LineWork wk;
        for (int j = 0; j < ny; ++j) body(wk, j);
        return;
    }
#if defined(EBFSI_HAVE_OPENMP)
    std::exception_ptr err;
#pragma omp parallel
    {
        LineWork wk;
#pragma omp for schedule(static)
        for (int j = 0; j < ny; ++j) {
            try {
                body(wk, j);
            } catch (...) {
#pragma omp critical(ebfsi_sweep_err)
                if (!err) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
#else
    LineWork wk;
    for (int j = 0; j < ny; ++j) body(wk, j);
#endif
}

void y_pass(const Array2<Conserved>& in, const Grid& grid, double dt, double t, const FluxScheme& scheme,
            const GasModel& gas, const DomainBoundary& bc, Execution exec, Array2<FluxVector>& fy,
            Array2<Conserved>& out, Array2<double>& p) {
    const int nx = grid.nx;
    const int ny = grid.ny;
    const double r = dt / grid.dy;
    auto body = [&](LineWork& wk, int i) {
        wk.line.resize(static_cast<std::size_t>(ny));
        for (int j = 0; j < ny; ++j) wk.line[j] = swap_axes(in(i, j));
        const double along = grid.xc(i);
        try {
            sweep_line(wk, r, scheme, gas, bc.bottom.rule_at(along, t), bc.top.rule_at(along, t), true, -1);
        } catch (const AdmissibilityError& e) {
            throw AdmissibilityError(e.what(), grid.index(i, 0));
        }
        for (int j = 0; j <= ny; ++j) fy(i, j) = swap_axes(wk.flux[j]);
        for (int j = 0; j < ny; ++j) {
            out(i, j) = in(i, j) - r * (fy(i, j + 1) - fy(i, j));
            p(i, j) = pressure(in(i, j), gas);
        }
    };
    if (exec == Execution::serial) {
        LineWork wk;
        for (int i = 0; i < nx; ++i) body(wk, i);
        return;
    }
#if defined(EBFSI_HAVE_OPENMP)
    std::exception_ptr err;
#pragma omp parallel
    {
        LineWork wk;
#pragma omp for schedule(static)
        for (int i = 0; i < nx; ++i) {
            try {
                body(wk, i);
            } catch (...) {
#pragma omp critical(ebfsi_sweep_err)
                if (!err) err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
#else
    LineWork wk;
    for (int i = 0; i < nx; ++i) body(wk, i);
#endif
}

}  // namespace

StrangResult strang_step_2d(const Array2<Conserved>& w, const Grid& grid, double dt, double t,
                            const FluxScheme& scheme, const GasModel& gas, const DomainBoundary& bc,
                            SweepOrder order, Execution exec, const Array2<double>* alpha) {
    if (w.nx() != grid.nx || w.ny() != grid.ny) throw std::invalid_argument("strang_step_2d: field/grid mismatch");
    if (!(dt > 0.0)) throw std::invalid_argument("strang_step_2d: dt must be positive");
    bc.validate();
    StrangResult res{Array2<FluxVector>(grid.nx + 1, grid.ny), Array2<FluxVector>(grid.nx, grid.ny + 1),
                     Array2<Conserved>(grid.nx, grid.ny), Array2<double>(grid.nx, grid.ny),
                     Array2<double>(grid.nx, grid.ny)};
    Array2<Conserved> mid(grid.nx, grid.ny);
    // Cells touched by a solid keep their input state for the second pass
    // when the full-cell intermediate update is not admissible.
    auto guard = [&] {
        if (!alpha) return;
        for (long c = 0; c < grid.cells(); ++c)
            if ((*alpha)[c] > 0.0 && !is_admissible(mid[c], gas)) mid[c] = w[c];
    };
    if (order == SweepOrder::xy) {
        x_pass(w, grid, dt, t, scheme, gas, bc, exec, res.fx, mid, res.p_x);
        guard();
        y_pass(mid, grid, dt, t, scheme, gas, bc, exec, res.fy, res.updated, res.p_y);
    } else {
        y_pass(w, grid, dt, t, scheme, gas, bc, exec, res.fy, mid, res.p_y);
        guard();
        x_pass(mid, grid, dt, t, scheme, gas, bc, exec, res.fx, res.updated, res.p_x);
    }
    return res;
}

double stable_dt(const Array2<Conserved>& w, const Grid& grid, const GasModel& gas, double cfl,
                 const Array2<double>* alpha) {
    if (!(cfl > 0.0)) throw std::invalid_argument("stable_dt: cfl must be positive");
    double smax = 0.0;
    bool any = false;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            if (alpha && (*alpha)(i, j) > 0.0) continue;
            const Primitive q = primitive_from_conserved(w(i, j), gas, grid.index(i, j));
            const double c = gas.sound_speed(q.rho, q.p);
            smax = std::max({smax, std::abs(q.u) + c, std::abs(q.v) + c});
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("stable_dt: no fully fluid cell");
    return cfl * std::min(grid.dx, grid.dy) / smax;
}

}  // namespace ebfsi
