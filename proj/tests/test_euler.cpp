#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "ebfsi/flux.hpp"
#include "ebfsi/riemann.hpp"
#include "ebfsi/state.hpp"
#include "ebfsi/sweep.hpp"

using namespace ebfsi;

namespace {

const GasModel kGas{1.4};

Conserved cons(double rho, double u, double v, double p) { return conserved_from_primitive({rho, u, v, p}, kGas); }

double rel_diff(const Conserved& a, const Conserved& b) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k < 4; ++k) {
        num = std::max(num, std::abs(a[k] - b[k]));
        den = std::max(den, std::abs(b[k]));
    }
    return num / std::max(den, 1e-300);
}

// Roe flux from a numerical eigendecomposition of the Roe-averaged Jacobian.
Conserved roe_oracle(const Primitive& l, const Primitive& r) {
    const double g = kGas.gamma;
    const Conserved wl = cons(l.rho, l.u, l.v, l.p), wr = cons(r.rho, r.u, r.v, r.p);
    const double hl = (wl.rho_E + l.p) / l.rho, hr = (wr.rho_E + r.p) / r.rho;
    const double sl = std::sqrt(l.rho), sr = std::sqrt(r.rho);
    const double u = (sl * l.u + sr * r.u) / (sl + sr);
    const double v = (sl * l.v + sr * r.v) / (sl + sr);
    const double H = (sl * hl + sr * hr) / (sl + sr);
    const double q2 = u * u + v * v;
    Eigen::Matrix4d A;
    A << 0, 1, 0, 0,
        0.5 * (g - 1) * q2 - u * u, (3 - g) * u, -(g - 1) * v, g - 1,
        -u * v, v, u, 0,
        u * (0.5 * (g - 1) * q2 - H), H - (g - 1) * u * u, -(g - 1) * u * v, g * u;
    Eigen::EigenSolver<Eigen::Matrix4d> es(A);
    const Eigen::Matrix4d R = es.eigenvectors().real();
    Eigen::Vector4d lam = es.eigenvalues().real().cwiseAbs();
    const Eigen::Matrix4d absA = R * lam.asDiagonal() * R.inverse();
    auto f = [&](const Primitive& q, const Conserved& w) {
        return Eigen::Vector4d(w.mom_x, w.mom_x * q.u + q.p, w.mom_y * q.u, (w.rho_E + q.p) * q.u);
    };
    const Eigen::Vector4d dw(wr.rho - wl.rho, wr.mom_x - wl.mom_x, wr.mom_y - wl.mom_y, wr.rho_E - wl.rho_E);
    const Eigen::Vector4d F = 0.5 * (f(l, wl) + f(r, wr)) - 0.5 * absA * dw;
    return {F(0), F(1), F(2), F(3)};
}

std::vector<Conserved> advect(std::vector<Conserved> row, double dx, double t_end, const FluxScheme& scheme) {
    const double smax = 1.0 + std::sqrt(1.4);
    const int steps = static_cast<int>(std::ceil(t_end / (0.5 * dx / smax)));
    const double dt = t_end / steps;
    for (int s = 0; s < steps; ++s)
        row = sweep_1d(row, dt, dx, scheme, kGas, SideCondition::periodic(), SideCondition::periodic()).updated;
    return row;
}

}  // namespace

TEST_SUITE("euler_core") {

TEST_CASE("rest state conversion") {
    const Primitive q = primitive_from_conserved({1.0, 0.0, 0.0, 2.5}, kGas);
    CHECK(q.rho == 1.0);
    CHECK(q.u == 0.0);
    CHECK(q.v == 0.0);
    CHECK(q.p == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("conserved/primitive round trip") {
    for (const Primitive& q : {Primitive{1.0, 0.3, -0.2, 2.0}, Primitive{0.125, -1.0, 4.0, 0.1},
                               Primitive{3.857, 2.6929, 0.0, 10.333}}) {
        const Conserved w = conserved_from_primitive(q, kGas);
        const Conserved w2 = conserved_from_primitive(primitive_from_conserved(w, kGas), kGas);
        CHECK(rel_diff(w2, w) <= 1e-14);
    }
}

TEST_CASE("inadmissible states are reported with the cell") {
    CHECK_THROWS_AS(primitive_from_conserved({-1.0, 0.0, 0.0, 1.0}, kGas), AdmissibilityError);
    try {
        primitive_from_conserved({1.0, 2.0, 0.0, 1.0}, kGas, 17);
        FAIL("expected AdmissibilityError");
    } catch (const AdmissibilityError& e) {
        CHECK(e.cell() == 17);
    }
    CHECK_FALSE(is_admissible({1.0, 0.0, 0.0, std::nan("")}, kGas));
    CHECK_THROWS(GasModel(1.0));
}

TEST_CASE("physical flux") {
    const Conserved rest = cons(1.0, 0.0, 0.0, 1.0);
    CHECK(euler_flux(rest, Axis::x, kGas) == Conserved{0.0, 1.0, 0.0, 0.0});
    const Conserved w = cons(3.857, 2.6929, 0.0, 10.333);
    CHECK(euler_flux(w, Axis::x, kGas).rho == doctest::Approx(3.857 * 2.6929).epsilon(1e-14));
    const Conserved fy = euler_flux(cons(2.0, 1.5, 0.0, 3.0), Axis::y, kGas);
    CHECK(fy.rho == 0.0);
    CHECK(fy.mom_x == 0.0);
    CHECK(fy.mom_y == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(fy.rho_E == 0.0);
}

TEST_CASE("Roe flux consistency") {
    for (const Primitive& q : {Primitive{1.0, 0.3, -0.2, 2.0}, Primitive{0.5, -2.0, 1.0, 0.4}}) {
        const Conserved w = conserved_from_primitive(q, kGas);
        CHECK(rel_diff(roe_flux(w, w, Axis::x, kGas), euler_flux(w, Axis::x, kGas)) <= 1e-13);
        CHECK(rel_diff(roe_flux(w, w, Axis::y, kGas), euler_flux(w, Axis::y, kGas)) <= 1e-13);
    }
}

TEST_CASE("Roe flux matches an independent eigendecomposition") {
    const Primitive l{1.0, 0.0, 0.0, 1.0}, r{0.125, 0.0, 0.0, 0.1};
    const Conserved f = roe_flux(cons(l.rho, l.u, l.v, l.p), cons(r.rho, r.u, r.v, r.p), Axis::x, kGas);
    CHECK(rel_diff(f, roe_oracle(l, r)) <= 1e-12);
    const Primitive l2{1.2, 0.4, 0.3, 1.5}, r2{0.9, 0.1, -0.2, 1.1};
    const Conserved f2 = roe_flux(cons(l2.rho, l2.u, l2.v, l2.p), cons(r2.rho, r2.u, r2.v, r2.p), Axis::x, kGas);
    CHECK(rel_diff(f2, roe_oracle(l2, r2)) <= 1e-12);
}

TEST_CASE("Roe flux mirror symmetry") {
    const Primitive l{1.0, 0.2, 0.1, 1.0}, r{0.5, -0.4, 0.3, 0.7};
    const Conserved f = roe_flux(cons(l.rho, l.u, l.v, l.p), cons(r.rho, r.u, r.v, r.p), Axis::x, kGas);
    const Conserved g = roe_flux(cons(r.rho, -r.u, r.v, r.p), cons(l.rho, -l.u, l.v, l.p), Axis::x, kGas);
    CHECK(g.rho == doctest::Approx(-f.rho).epsilon(1e-13));
}

TEST_CASE("Roe wave decomposition sums to the jump") {
    const Conserved wl = cons(1.0, 0.2, 0.1, 1.0), wr = cons(0.4, -0.3, 0.5, 0.6);
    const RoeWaves w = roe_decompose(wl, wr, kGas);
    Conserved sum{};
    for (int k = 0; k < 4; ++k) sum += w.strength[k] * w.r[k];
    CHECK(rel_diff(sum, wr - wl) <= 1e-13);
    CHECK_FALSE(w.positivity_fallback);
}

TEST_CASE("near-vacuum interfaces fall back to HLLE") {
    const Conserved wl = cons(1.0, -4.0, 0.0, 0.4), wr = cons(1.0, 4.0, 0.0, 0.4);
    const RoeWaves w = roe_decompose(wl, wr, kGas);
    CHECK(w.positivity_fallback);
    CHECK(rel_diff(w.roe, hlle_flux(wl, wr, kGas)) == 0.0);
}

TEST_CASE("limiter functions") {
    CHECK(limiter_value(Limiter::minmod, -1.0) == 0.0);
    CHECK(limiter_value(Limiter::minmod, 0.5) == 0.5);
    CHECK(limiter_value(Limiter::monotonized_central, 1.0) == 1.0);
    CHECK(limiter_value(Limiter::monotonized_central, 10.0) == 2.0);
    CHECK(limiter_value(Limiter::van_leer, 1.0) == 1.0);
    CHECK(limiter_value(Limiter::superbee, 0.5) == 1.0);
    for (Limiter lim : {Limiter::minmod, Limiter::monotonized_central, Limiter::van_leer, Limiter::superbee})
        CHECK(limiter_value(lim, 1.0) == 1.0);
}

TEST_CASE("high-order flux on constant data is the physical flux") {
    const Conserved w = cons(1.3, 0.7, -0.4, 2.2);
    for (const FluxScheme& s : {FluxScheme::roe_first_order(), FluxScheme::limited_second_order()}) {
        std::vector<Conserved> st(static_cast<std::size_t>(s.stencil_points()), w);
        CHECK(rel_diff(high_order_flux(st, s, 0.01, 0.1, Axis::x, kGas), euler_flux(w, Axis::x, kGas)) <= 1e-13);
        CHECK(rel_diff(high_order_flux(st, s, 0.01, 0.1, Axis::y, kGas), euler_flux(w, Axis::y, kGas)) <= 1e-13);
    }
    const FluxScheme s = FluxScheme::limited_second_order();
    std::vector<Conserved> short_st(1, w);
    CHECK_THROWS(high_order_flux(short_st, s, 0.01, 0.1, Axis::x, kGas));
}

TEST_CASE("pluggable slot with a zero correction is first-order Roe") {
    const FluxScheme p = FluxScheme::pluggable(3, [](const WaveContext&) { return 0.0; });
    CHECK(p.half_width() == 3);
    std::vector<Conserved> st;
    for (int k = 0; k < 6; ++k) st.push_back(cons(1.0 + 0.1 * k, 0.2, 0.0, 1.0));
    const Conserved f = high_order_flux(st, p, 0.01, 0.1, Axis::x, kGas);
    CHECK(rel_diff(f, roe_flux(st[2], st[3], Axis::x, kGas)) <= 1e-15);
    CHECK_THROWS(FluxScheme::pluggable(0, [](const WaveContext&) { return 0.0; }));
}

TEST_CASE("smooth advection converges at second order") {
    std::vector<double> errs, hs;
    for (int n : {50, 100, 200, 400}) {
        const double dx = 1.0 / n;
        std::vector<Conserved> row;
        for (int i = 0; i < n; ++i) {
            // Cell averages of the profile.
            const double x0 = i * dx, x1 = x0 + dx;
            const double avg = 1.0 + 0.2 * (std::cos(2 * std::numbers::pi * x0) - std::cos(2 * std::numbers::pi * x1)) /
                                         (2 * std::numbers::pi * dx);
            row.push_back(cons(avg, 1.0, 0.0, 1.0));
        }
        const std::vector<Conserved> init = row;
        row = advect(row, dx, 1.0, FluxScheme::limited_second_order());
        double e = 0.0;
        for (int i = 0; i < n; ++i) e += std::abs(row[i].rho - init[i].rho) * dx;
        errs.push_back(e);
        hs.push_back(dx);
    }
    for (std::size_t k = 1; k < errs.size(); ++k) {
        const double order = std::log(errs[k - 1] / errs[k]) / std::log(hs[k - 1] / hs[k]);
        CHECK(order >= 1.8);
    }
}

TEST_CASE("square wave stays within its initial bounds") {
    const int n = 100;
    std::vector<Conserved> row;
    for (int i = 0; i < n; ++i) row.push_back(cons((i >= 30 && i < 60) ? 2.0 : 1.0, 1.0, 0.0, 1.0));
    for (Limiter lim : {Limiter::minmod, Limiter::monotonized_central, Limiter::van_leer, Limiter::superbee}) {
        const std::vector<Conserved> out = advect(row, 1.0 / n, 0.37, FluxScheme::limited_second_order(lim));
        for (const Conserved& w : out) {
            CHECK(w.rho >= 1.0 - 1e-12);
            CHECK(w.rho <= 2.0 + 1e-12);
        }
    }
}

TEST_CASE("periodic sweep conserves and keeps constant rows") {
    const int n = 64;
    std::vector<Conserved> row;
    for (int i = 0; i < n; ++i) row.push_back(cons(1.0 + 0.5 * (i % 7 == 0), 0.3 * std::sin(i), 0.1, 1.0 + 0.2 * (i % 3)));
    const SweepOutput out = sweep_1d(row, 1e-3, 1.0 / n, FluxScheme::limited_second_order(), kGas,
                                     SideCondition::periodic(), SideCondition::periodic());
    Conserved before{}, after{};
    for (int i = 0; i < n; ++i) {
        before += row[i];
        after += out.updated[i];
    }
    CHECK(rel_diff(after, before) <= 1e-13);

    std::vector<Conserved> flat(n, cons(1.0, 0.5, -0.2, 1.0));
    const SweepOutput o2 = sweep_1d(flat, 1e-3, 1.0 / n, FluxScheme::limited_second_order(), kGas,
                                    SideCondition::periodic(), SideCondition::periodic(), Axis::y);
    for (const Conserved& w : o2.updated) CHECK(rel_diff(w, flat[0]) <= 1e-14);
}

TEST_CASE("reflective walls and transmissive sides") {
    const int n = 32;
    std::vector<Conserved> row(n, cons(1.0, 0.0, 0.0, 1.0));
    const SweepOutput o = sweep_1d(row, 1e-3, 1.0 / n, FluxScheme::limited_second_order(), kGas,
                                   SideCondition::reflective(), SideCondition::transmissive());
    CHECK(o.fluxes.front().rho == 0.0);
    CHECK(o.fluxes.front().mom_x == doctest::Approx(1.0).epsilon(1e-14));
    for (const Conserved& w : o.updated) CHECK(rel_diff(w, row[0]) <= 1e-14);
}

TEST_CASE("uniform 2D field is unchanged and records the pressure") {
    const Grid grid{8, 6, 0.0, 0.0, 0.125, 0.1};
    const Conserved w0 = cons(1.0, 0.4, -0.3, 2.0);
    const Array2<Conserved> w(8, 6, w0);
    for (SweepOrder order : {SweepOrder::xy, SweepOrder::yx}) {
        const StrangResult r = strang_step_2d(w, grid, 0.01, 0.0, FluxScheme::limited_second_order(), kGas,
                                              DomainBoundary::all(SideCondition::periodic()), order, Execution::serial);
        for (long c = 0; c < grid.cells(); ++c) {
            CHECK(rel_diff(r.updated[c], w0) <= 1e-14);
            CHECK(r.p_x[c] == doctest::Approx(2.0).epsilon(1e-14));
            CHECK(r.p_y[c] == doctest::Approx(2.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("checkerboard on a periodic 2x2 grid conserves totals") {
    const Grid grid{2, 2, 0.0, 0.0, 0.5, 0.5};
    Array2<Conserved> w(2, 2);
    w(0, 0) = w(1, 1) = cons(1.0, 0.1, 0.2, 1.0);
    w(1, 0) = w(0, 1) = cons(0.5, -0.1, 0.0, 0.6);
    const StrangResult r = strang_step_2d(w, grid, 0.02, 0.0, FluxScheme::limited_second_order(), kGas,
                                          DomainBoundary::all(SideCondition::periodic()), SweepOrder::xy,
                                          Execution::serial);
    Conserved a{}, b{};
    for (long c = 0; c < 4; ++c) {
        a += w[c];
        b += r.updated[c];
    }
    CHECK(rel_diff(b, a) <= 1e-13);
}

TEST_CASE("periodic 2D step conserves and serial equals parallel") {
    const Grid grid{40, 30, 0.0, 0.0, 0.025, 1.0 / 30};
    Array2<Conserved> w(40, 30);
    for (int j = 0; j < 30; ++j)
        for (int i = 0; i < 40; ++i)
            w(i, j) = cons(1.0 + 0.3 * std::sin(0.4 * i) * std::cos(0.3 * j), 0.2 * std::cos(0.2 * j), 0.1 * std::sin(0.5 * i),
                           1.0 + 0.1 * ((i + j) % 4));
    const auto bc = DomainBoundary::all(SideCondition::periodic());
    const double dt = stable_dt(w, grid, kGas, 0.5);
    const StrangResult s = strang_step_2d(w, grid, dt, 0.0, FluxScheme::limited_second_order(), kGas, bc,
                                          SweepOrder::yx, Execution::serial);
    const StrangResult p = strang_step_2d(w, grid, dt, 0.0, FluxScheme::limited_second_order(), kGas, bc,
                                          SweepOrder::yx, Execution::parallel);
    CHECK(s.updated == p.updated);
    Conserved a{}, b{};
    for (long c = 0; c < grid.cells(); ++c) {
        a += w[c];
        b += s.updated[c];
    }
    CHECK(rel_diff(b, a) <= 1e-12);
}

TEST_CASE("x-y and y-x orderings differ at second order in dt") {
    const int n = 32;
    const Grid grid{n, n, 0.0, 0.0, 1.0 / n, 1.0 / n};
    Array2<Conserved> w(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const double x = grid.xc(i) - 0.5, y = grid.yc(j) - 0.5;
            const double s = std::exp(-20.0 * (x * x + y * y));
            w(i, j) = cons(1.0 + 0.2 * s, 0.5 - y * s, 0.3 + x * s, 1.0 + 0.1 * s);
        }
    const auto bc = DomainBoundary::all(SideCondition::periodic());
    auto diff = [&](double dt) {
        const auto a = strang_step_2d(w, grid, dt, 0.0, FluxScheme::limited_second_order(), kGas, bc, SweepOrder::xy,
                                      Execution::serial);
        const auto b = strang_step_2d(w, grid, dt, 0.0, FluxScheme::limited_second_order(), kGas, bc, SweepOrder::yx,
                                      Execution::serial);
        double m = 0.0;
        for (long c = 0; c < grid.cells(); ++c) m = std::max(m, rel_diff(a.updated[c], b.updated[c]));
        return m;
    };
    const double dt = 0.2 * stable_dt(w, grid, kGas, 0.5);
    const double ratio = diff(dt) / diff(0.5 * dt);
    CHECK(ratio > 3.0);
    CHECK(ratio < 5.0);
    CHECK(sweep_order_for_step(0) == SweepOrder::xy);
    CHECK(sweep_order_for_step(1) == SweepOrder::yx);
}

TEST_CASE("stable time step") {
    const Grid grid{10, 10, 0.0, 0.0, 0.01, 0.01};
    Array2<Conserved> w(10, 10, cons(1.0, 0.0, 0.0, 1.0));
    const double dt = stable_dt(w, grid, kGas, 0.5);
    CHECK(dt == doctest::Approx(0.005 / std::sqrt(1.4)).epsilon(1e-14));
    CHECK(stable_dt(w, grid, kGas, 1.0) == doctest::Approx(2.0 * dt).epsilon(1e-14));
    w(3, 4) = cons(1.0, 2.0, 0.0, 1.0);
    CHECK(stable_dt(w, grid, kGas, 0.5) < dt);

    Array2<double> alpha(10, 10, 0.0);
    alpha(3, 4) = 0.3;
    CHECK(stable_dt(w, grid, kGas, 0.5, &alpha) == doctest::Approx(dt).epsilon(1e-14));
    alpha.fill(1.0);
    CHECK_THROWS(stable_dt(w, grid, kGas, 0.5, &alpha));
}

TEST_CASE("half-paired periodic sides are rejected") {
    DomainBoundary bc;
    bc.left = SideCondition::periodic();
    CHECK_THROWS(bc.validate());
}

TEST_CASE("exact Riemann solver") {
    const StarState s = riemann_star({1.0, 0.0, 0.0, 1.0}, {0.125, 0.0, 0.0, 0.1}, kGas);
    CHECK(s.p == doctest::Approx(0.30313).epsilon(1e-5 / 0.30313));
    CHECK(s.u == doctest::Approx(0.92745).epsilon(1e-5 / 0.92745));

    const Primitive q{0.7, 0.3, 0.1, 0.9};
    for (double xi : {-2.0, 0.0, 0.4, 3.0}) {
        const Primitive e = exact_riemann_solution(q, q, kGas, xi);
        CHECK(e.rho == doctest::Approx(q.rho));
        CHECK(e.p == doctest::Approx(q.p));
    }
    const Primitive l{1.0, 0.8, 0.0, 1.0};
    const Primitive wall = exact_riemann_solution(l, {1.0, -0.8, 0.0, 1.0}, kGas, 0.0);
    CHECK(std::abs(wall.u) <= 1e-12);
    CHECK_THROWS_AS(riemann_star({1.0, -10.0, 0.0, 0.1}, {1.0, 10.0, 0.0, 0.1}, kGas), VacuumError);
}

TEST_CASE("Rankine-Hugoniot states") {
    const Primitive ahead{1.0, 0.0, 0.0, 1.0};
    const Primitive post = post_shock_state(ahead, 3.0, kGas);
    // (gamma+1)M^2/((gamma-1)M^2+2), 1 + 2 gamma/(gamma+1)(M^2-1), M c (1 - rho1/rho2)
    CHECK(post.rho == doctest::Approx(21.6 / 5.6).epsilon(1e-13));
    CHECK(post.p == doctest::Approx(1.0 + 2.8 / 2.4 * 8.0).epsilon(1e-13));
    CHECK(post.u == doctest::Approx(3.0 * std::sqrt(1.4) * (1.0 - 5.6 / 21.6)).epsilon(1e-13));
    CHECK(post.rho == doctest::Approx(3.857).epsilon(1e-4));
    CHECK(post.p == doctest::Approx(10.333).epsilon(1e-4));
    CHECK(post.u == doctest::Approx(2.6293).epsilon(1e-4));
    CHECK(shock_speed(ahead, 3.0, kGas) == doctest::Approx(3.0 * std::sqrt(1.4)).epsilon(1e-14));

    const Primitive dmr = post_shock_state({1.4, 0.0, 0.0, 1.0}, 10.0, kGas);
    CHECK(dmr.rho == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(dmr.u == doctest::Approx(8.25).epsilon(1e-12));
    CHECK(dmr.p == doctest::Approx(116.5).epsilon(1e-12));
}

}  // TEST_SUITE
