#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebfsi/config.hpp"
#include "ebfsi/consistency.hpp"
#include "ebfsi/coupling.hpp"
#include "ebfsi/diagnostics.hpp"

using namespace ebfsi;

namespace {

const GasModel kGas{1.4};

Conserved cons(double rho, double u, double v, double p) { return conserved_from_primitive({rho, u, v, p}, kGas); }

CutCellGeometry geometry_with_alpha(const Grid& g, const std::vector<std::pair<long, double>>& cells) {
    CutCellGeometry geo = CutCellGeometry::fluid_only(g);
    for (auto [c, a] : cells) geo.alpha[c] = a;
    return geo;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("boundary flux") {
    BoundaryFace f;
    f.n = {0.6, 0.8};
    f.p_bar_x = f.p_bar_y = 2.0;
    const FluxVector s = boundary_flux(f);
    CHECK(s.rho == 0.0);
    CHECK(s.mom_x == doctest::Approx(1.2));
    CHECK(s.mom_y == doctest::Approx(1.6));
    CHECK(s.rho_E == 0.0);
    f.V_half = {0.5, -1.0};
    CHECK(boundary_flux(f).rho_E == doctest::Approx(2.0 * (0.5 * 0.6 - 1.0 * 0.8)));
    f.p_bar_x = 3.0;
    const FluxVector t = boundary_flux(f);
    CHECK(t.mom_x == doctest::Approx(1.8));
    CHECK(t.mom_y == doctest::Approx(1.6));
    CHECK_THROWS(boundary_flux(BoundaryFace{}));
}

TEST_CASE("flux modification reduces to the plain update without solid") {
    CutCellBalance c;
    c.w_n = cons(1.0, 0.2, 0.1, 1.0);
    c.f_l = {0.3, 1.1, 0.05, 0.9};
    c.f_r = {0.25, 1.0, 0.04, 0.8};
    c.f_b = {0.1, 0.02, 1.2, 0.3};
    c.f_t = {0.12, 0.03, 1.1, 0.35};
    c.dt = 0.01;
    c.dx = 0.1;
    c.dy = 0.2;
    const FluxModification m = apply_flux_modification(c);
    const Conserved plain = c.w_n + (c.dt / c.dx) * (c.f_l - c.f_r) + (c.dt / c.dy) * (c.f_b - c.f_t);
    for (int k = 0; k < 4; ++k) CHECK(m.content[k] == doctest::Approx(plain[k]).epsilon(1e-15));
    CHECK_FALSE(m.covered);
}

TEST_CASE("flux modification matches a hand expansion") {
    CutCellBalance c;
    c.alpha_np1 = 0.3;
    c.kappa_l = 0.2;
    c.kappa_r = 0.0;
    c.kappa_b = 0.6;
    c.kappa_t = 0.0;
    c.w_n = {1.0, 2.0, 3.0, 10.0};
    c.f_l = {1.0, 1.0, 1.0, 1.0};
    c.f_r = {2.0, 2.0, 2.0, 2.0};
    c.f_b = {0.5, 0.5, 0.5, 0.5};
    c.f_t = {0.25, 0.25, 0.25, 0.25};
    c.boundary_flux_sum = {0.0, 0.4, -0.2, 0.1};
    c.swept_sum = {0.01, 0.02, 0.03, 0.04};
    c.dt = 0.1;
    c.dx = 0.5;
    c.dy = 0.25;
    const FluxModification m = apply_flux_modification(c);
    // Component 0 by hand:
    //   0.7*1 + 0.2*(0.8*1 - 1*2) + 0.4*(0.4*0.5 - 1*0.25) + 0.8*0 + 0.01 = 0.7 - 0.24 - 0.02 + 0.01 = 0.45
    CHECK(m.content.rho == doctest::Approx(0.45).epsilon(1e-14));
    // Component 1: 1.4 - 0.24 - 0.02 + 0.8*0.4 + 0.02 = 1.48
    CHECK(m.content.mom_x == doctest::Approx(1.48).epsilon(1e-14));
    CHECK(m.dw.rho == doctest::Approx(0.45 / 0.7 - 1.0).epsilon(1e-14));

    c.alpha_np1 = 1.0;
    const FluxModification cov = apply_flux_modification(c);
    CHECK(cov.covered);
    CHECK(cov.dw == Conserved{});
}

TEST_CASE("one-face exchange changes the content by exactly dt S f") {
    CutCellBalance c;
    c.alpha_np1 = 0.4;
    c.w_n = cons(1.0, 0.0, 0.0, 1.0);
    c.f_l = c.f_r = euler_flux(c.w_n, Axis::x, kGas);
    c.f_b = c.f_t = euler_flux(c.w_n, Axis::y, kGas);
    BoundaryFace f;
    f.n = {-1.0, 0.0};
    f.S = 0.05;
    f.p_bar_x = f.p_bar_y = 1.0;
    f.V_half = {0.3, 0.0};
    c.boundary_flux_sum = f.S * boundary_flux(f);
    c.dt = 0.01;
    c.dx = c.dy = 0.1;
    const FluxModification m = apply_flux_modification(c);
    const Conserved gained = (c.dx * c.dy) * (m.content - 0.6 * c.w_n);
    const Conserved expect = (c.dt * f.S) * boundary_flux(f);
    for (int k = 0; k < 4; ++k) CHECK(gained[k] == doctest::Approx(expect[k]).epsilon(1e-14));
}

TEST_CASE("target search") {
    const Grid g{5, 5, 0.0, 0.0, 0.2, 0.2};
    CutCellGeometry geo = geometry_with_alpha(g, {{g.index(2, 2), 0.7}});
    // Four equidistant neighbours: the two off the mid row win, then row-major.
    CHECK(find_target_cell(geo, g.index(2, 2)) == g.index(2, 1));

    // Walled on three sides: only the upper face is open.
    CutCellGeometry w = geometry_with_alpha(g, {{g.index(2, 2), 0.7}, {g.index(1, 2), 0.5}, {g.index(3, 2), 0.5},
                                                {g.index(2, 1), 0.5}});
    w.kappa_x(2, 2) = 1.0;  // left face of (2, 2)
    w.kappa_x(3, 2) = 1.0;  // right face
    w.kappa_y(2, 2) = 1.0;  // bottom face
    CHECK(find_target_cell(w, g.index(2, 2)) == g.index(2, 3));

    // Row tie: two candidates at the same distance in the same row.
    CutCellGeometry r = geometry_with_alpha(g, {{g.index(2, 2), 0.7}, {g.index(2, 1), 0.4}, {g.index(2, 3), 0.4}});
    CHECK(find_target_cell(r, g.index(2, 2)) == g.index(1, 2));

    CutCellGeometry sealed = geometry_with_alpha(g, {{g.index(0, 0), 0.7}});
    sealed.kappa_x(1, 0) = 1.0;
    sealed.kappa_y(0, 1) = 1.0;
    CHECK_THROWS_AS(find_target_cell(sealed, g.index(0, 0)), std::runtime_error);
}

TEST_CASE("pair mixing arithmetic") {
    // beta_C = 0.25, w_C = 2; beta_T = 1, w_T = 4 -> (0.5 + 4) / 1.25 = 3.6, total 4.5
    const Conserved m = mix_pair(0.25, {2.0, 2.0, 2.0, 2.0}, 1.0, {4.0, 4.0, 4.0, 4.0});
    CHECK(m.rho == doctest::Approx(3.6).epsilon(1e-15));
    CHECK((0.25 + 1.0) * m.rho == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(mix_pair(0.5, {1, 1, 1, 1}, 0.5, {3, 3, 3, 3}).rho == doctest::Approx(2.0));

    // Printed alpha weights: alpha_C = 0.6, w_C = 1; alpha_T = 0.2, w_T = 3.
    // M_CT = 0.2/0.8 * 2 = 0.5, M_TC = 0.6/0.8 * (-2) = -1.5; both cells end at 1.5.
    const auto [mc, mt] = alpha_exchange(0.6, {1, 1, 1, 1}, 0.2, {3, 3, 3, 3});
    CHECK(mc.rho == doctest::Approx(0.5));
    CHECK(mt.rho == doctest::Approx(-1.5));
    CHECK(1.0 + mc.rho == doctest::Approx(3.0 + mt.rho));
    CHECK(1.0 + mc.rho == doctest::Approx(1.5));
}

TEST_CASE("group mixing conserves fluid content") {
    const Grid g{6, 6, 0.0, 0.0, 1.0 / 6, 1.0 / 6};
    CutCellGeometry geo = geometry_with_alpha(g, {{g.index(2, 2), 0.8}, {g.index(2, 3), 0.6}, {g.index(3, 3), 0.3}});
    Array2<Conserved> content(6, 6);
    for (long c = 0; c < g.cells(); ++c) content[c] = (1.0 - geo.alpha[c]) * cons(1.0 + 0.1 * c, 0.1, 0.0, 1.0 + 0.05 * c);
    const Array2<double> alpha_n = geo.alpha;
    const MixingOutcome out = mix_small_cells(content, geo, alpha_n);
    CHECK(out.small_cells == 2);
    Conserved before{}, after{};
    for (long c = 0; c < g.cells(); ++c) {
        before += content[c];
        after += (1.0 - geo.alpha[c]) * out.w[c];
    }
    for (int k = 0; k < 4; ++k) CHECK(after[k] == doctest::Approx(before[k]).epsilon(1e-14));
    for (long c = 0; c < g.cells(); ++c)
        if (out.target[c] >= 0) CHECK(out.w[c] == out.w[out.target[c]]);
}

TEST_CASE("mixing a uniform field changes nothing") {
    const Grid g{6, 6, 0.0, 0.0, 1.0 / 6, 1.0 / 6};
    CutCellGeometry geo = geometry_with_alpha(g, {{g.index(2, 2), 0.8}, {g.index(4, 1), 0.9}});
    const Conserved w0 = cons(1.3, 0.2, -0.1, 2.0);
    Array2<Conserved> content(6, 6);
    for (long c = 0; c < g.cells(); ++c) content[c] = (1.0 - geo.alpha[c]) * w0;
    for (MixingWeights mw : {MixingWeights::fluid_fraction, MixingWeights::solid_fraction}) {
        const MixingOutcome out = mix_small_cells(content, geo, geo.alpha, mw);
        for (long c = 0; c < g.cells(); ++c)
            for (int k = 0; k < 4; ++k) CHECK(out.w[c][k] == doctest::Approx(w0[k]).epsilon(1e-14));
    }
}

TEST_CASE("covered cells hand their content to the target") {
    const Grid g{4, 4, 0.0, 0.0, 0.25, 0.25};
    CutCellGeometry geo = geometry_with_alpha(g, {{g.index(1, 1), 1.0}});
    Array2<double> alpha_n(4, 4, 0.0);
    alpha_n(1, 1) = 0.9;
    Array2<Conserved> content(4, 4, cons(1.0, 0.0, 0.0, 1.0));
    content(1, 1) = 0.1 * cons(1.0, 0.0, 0.0, 1.0);
    const MixingOutcome out = mix_small_cells(content, geo, alpha_n);
    CHECK(out.covered[g.index(1, 1)]);
    Conserved before{}, after{};
    for (long c = 0; c < g.cells(); ++c) {
        before += content[c];
        after += (1.0 - geo.alpha[c]) * out.w[c];
    }
    CHECK(after.rho == doctest::Approx(before.rho).epsilon(1e-14));
}

TEST_CASE("solid refill from neighbours") {
    Array2<Conserved> w(3, 3, cons(2.0, 0.0, 0.0, 1.0));
    Array2<double> alpha(3, 3, 0.0);
    alpha(1, 1) = 1.0;
    w(1, 1) = {};
    extrapolate_into_solid(w, alpha);
    CHECK(is_admissible(w(1, 1), kGas));
    CHECK(w(1, 1).rho == doctest::Approx(2.0));
}

TEST_CASE("coupled step without solid is the plain split step") {
    ScenarioConfig cfg;
    cfg.nx = cfg.ny = 16;
    cfg.max_steps = 1;
    cfg.left = cfg.right = cfg.bottom = cfg.top = {BoundaryKind::periodic, {}};
    RegionSpec all;
    all.state = {1.0, 0.3, 0.1, 1.0};
    RegionSpec bump;
    bump.shape = RegionShape::box;
    bump.x0 = 0.3;
    bump.x1 = 0.6;
    bump.y0 = 0.2;
    bump.y1 = 0.5;
    bump.state = {1.5, 0.0, 0.2, 1.4};
    cfg.regions = {all, bump};
    CutCellField field = make_field(cfg);
    const CouplingOptions opt = make_options(cfg);
    const double dt = 0.004;
    const StrangResult plain = strang_step_2d(field.w, field.grid, dt, 0.0, opt.scheme, opt.gas, opt.bc,
                                              SweepOrder::xy, Execution::serial);
    const StepReport rep = coupled_step(field, dt, opt);
    CHECK(rep.small_cells == 0);
    for (long c = 0; c < field.grid.cells(); ++c)
        for (int k = 0; k < 4; ++k)
            CHECK(field.w[c][k] == doctest::Approx(plain.updated[c][k]).epsilon(1e-13));
}

TEST_CASE("a failing step leaves the field untouched") {
    CutCellField field = make_field(co_moving_config(64, 16));
    const Array2<Conserved> w0 = field.w;
    const RigidBody b0 = field.bodies[0].body;
    CHECK_THROWS(coupled_step(field, -1.0, make_options(co_moving_config(64, 16))));
    CHECK(field.w == w0);
    CHECK(field.bodies[0].body.X == b0.X);
    CHECK(field.step == 0);
}

TEST_CASE("co-moving polygon leaves the uniform flow unchanged") {
    const ConsistencyResult r = run_consistency(co_moving_config(64, 16), 60, Execution::serial);
    CHECK(r.steps == 60);
    CHECK(r.fluid_change <= 1e-12);
    CHECK(r.velocity_change <= 1e-12);
    CHECK(r.max_mass_residual <= 1e-12);
}

TEST_CASE("static oblique wall preserves free slip") {
    const ConsistencyResult r = run_consistency(free_slip_config(64), 60);
    CHECK(r.fluid_change <= 1e-12);
    CHECK(r.max_mass_residual <= 1e-12);
    CHECK(r.max_balance_residual <= 1e-10);
}

}  // TEST_SUITE
