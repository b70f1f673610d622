#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ebfsi/cut_cell.hpp"
#include "ebfsi/geometry.hpp"

using namespace ebfsi;

namespace {

const Grid kUnit{1, 1, 0.0, 0.0, 1.0, 1.0};

Polygon box(double x0, double y0, double x1, double y1) { return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}; }

// One vertex per angular sector with at least four sectors, so consecutive
// vertices are less than pi apart and the polygon is simple and star-shaped.
Polygon random_star(std::mt19937_64& rng, Vec2 c, double r) {
    std::uniform_real_distribution<double> jitter(0.0, 1.0), rad(0.4 * r, r);
    std::uniform_int_distribution<int> nv(4, 9);
    const int n = nv(rng);
    const double sector = 2.0 * std::numbers::pi / n;
    Polygon p;
    for (int k = 0; k < n; ++k) {
        const double t = (k + jitter(rng)) * sector;
        const double rr = rad(rng);
        p.push_back({c.x + rr * std::cos(t), c.y + rr * std::sin(t)});
    }
    return p;
}

Polygon moved(const Polygon& p, Vec2 shift, double angle, Vec2 about) {
    Polygon q;
    const double cs = std::cos(angle), sn = std::sin(angle);
    for (const Vec2& v : p) {
        const Vec2 d = v - about;
        q.push_back(Vec2{about.x + cs * d.x - sn * d.y, about.y + sn * d.x + cs * d.y} + shift);
    }
    return q;
}

std::vector<BoundaryFace> faces_in(const std::vector<BoundaryFace>& faces, long cell, bool np1) {
    std::vector<BoundaryFace> out;
    for (const BoundaryFace& f : faces)
        if ((np1 ? f.cell_np1 : f.cell_n) == cell) out.push_back(f);
    return out;
}

}  // namespace

TEST_SUITE("cut_geometry") {

TEST_CASE("polygon area, centroid and orientation") {
    const Polygon sq = box(1.0, 2.0, 3.0, 3.0);
    CHECK(signed_area(sq) == doctest::Approx(2.0));
    CHECK(centroid(sq) == Vec2{2.0, 2.5});
    Polygon cw(sq.rbegin(), sq.rend());
    CHECK(signed_area(cw) == doctest::Approx(-2.0));
    CHECK(signed_area(counter_clockwise(cw)) == doctest::Approx(2.0));
    CHECK_THROWS(validate_polygon({{0, 0}, {1, 0}}));
    CHECK_THROWS(validate_polygon({{0, 0}, {1, 0}, {2, 0}}));
    CHECK(winding_number(sq, {2.0, 2.5}) != 0);
    CHECK(winding_number(sq, {0.0, 0.0}) == 0);
}

TEST_CASE("volume fraction examples") {
    CHECK(volume_fraction(box(-1.0, -1.0, 2.0, 0.5), kUnit, 0, 0) == doctest::Approx(0.5).epsilon(1e-15));
    const Polygon tri{{0.0, 0.0}, {0.25, 0.0}, {0.0, 0.25}};
    CHECK(volume_fraction(tri, kUnit, 0, 0) == doctest::Approx(0.03125).epsilon(1e-15));
    CHECK(volume_fraction(box(-1, -1, 2, 2), kUnit, 0, 0) == 1.0);
    CHECK(volume_fraction(box(2, 2, 3, 3), kUnit, 0, 0) == 0.0);
}

TEST_CASE("face aperture examples") {
    const Apertures a = face_apertures(box(-1.0, -1.0, 2.0, 0.5), kUnit, 0, 0);
    CHECK(a.b == doctest::Approx(1.0));
    CHECK(a.t == doctest::Approx(0.0));
    CHECK(a.l == doctest::Approx(0.5));
    CHECK(a.r == doctest::Approx(0.5));
    const Apertures f = face_apertures(box(-1, -1, 2, 2), kUnit, 0, 0);
    CHECK(f.l == 1.0);
    CHECK(f.r == 1.0);
    CHECK(f.b == 1.0);
    CHECK(f.t == 1.0);
}

TEST_CASE("interval helpers") {
    const auto m = merge_intervals({{0.5, 0.7}, {0.0, 0.2}, {0.1, 0.3}});
    REQUIRE(m.size() == 2);
    CHECK(m[0].lo == 0.0);
    CHECK(m[0].hi == 0.3);
    CHECK(covered_length(m, 0.0, 1.0) == doctest::Approx(0.5));
    CHECK(covered_length(m, 0.25, 0.6) == doctest::Approx(0.15));
    CHECK(crossing_y({0.0, 0.0}, {2.0, 1.0}, 1.0) == doctest::Approx(0.5));
    CHECK(crossing_x({0.0, 0.0}, {2.0, 1.0}, 0.5) == doctest::Approx(1.0));
    const auto vc = vertical_cover(box(0, 0, 1, 1), 0.5);
    REQUIRE(vc.size() == 1);
    CHECK(vc[0].hi - vc[0].lo == doctest::Approx(1.0));
}

TEST_CASE("additivity and translation invariance") {
    const Grid g{4, 4, 0.0, 0.0, 0.25, 0.25};
    const Polygon a{{0.26, 0.26}, {0.36, 0.27}, {0.30, 0.40}};
    const Polygon b{{0.40, 0.30}, {0.48, 0.28}, {0.45, 0.45}};
    const Polygon both[] = {a, b};
    const CutCellGeometry u = build_geometry(both, g);
    CHECK(u.alpha(1, 1) == doctest::Approx(volume_fraction(a, g, 1, 1) + volume_fraction(b, g, 1, 1)).epsilon(1e-14));

    const Polygon p{{0.3, 0.2}, {0.7, 0.35}, {0.45, 0.6}};
    const double alpha0 = volume_fraction(p, kUnit, 0, 0);
    const Apertures k0 = face_apertures(p, kUnit, 0, 0);
    const Vec2 s{123.0, -47.0};
    Polygon q;
    for (const Vec2& v : p) q.push_back(v + s);
    const Grid shifted{1, 1, s.x, s.y, 1.0, 1.0};
    CHECK(volume_fraction(q, shifted, 0, 0) == doctest::Approx(alpha0).epsilon(1e-13));
    const Apertures k1 = face_apertures(q, shifted, 0, 0);
    CHECK(std::abs(k1.l - k0.l) + std::abs(k1.r - k0.r) + std::abs(k1.b - k0.b) + std::abs(k1.t - k0.t) <= 1e-13);
}

TEST_CASE("shared faces agree and values are bounded") {
    const Grid g{10, 10, 0.0, 0.0, 0.1, 0.1};
    const Polygon c = circle_polygon({0.47, 0.52}, 0.31, 40, 0.1);
    const Polygon one[] = {c};
    const CutCellGeometry geo = build_geometry(one, g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            CHECK(geo.alpha(i, j) >= 0.0);
            CHECK(geo.alpha(i, j) <= 1.0);
            if (i + 1 < g.nx) CHECK(geo.kappa_r(i, j) == geo.kappa_l(i + 1, j));
        }
    double total = 0.0;
    for (double a : geo.alpha) total += a * g.cell_area();
    CHECK(total == doctest::Approx(signed_area(c)).epsilon(1e-13));
}

TEST_CASE("oblique half-plane satisfies the GCL") {
    const Grid g{8, 8, 0.0, 0.0, 0.125, 0.125};
    const double t = std::tan(std::numbers::pi / 6.0);
    const Polygon wall{{-1.0, 0.2 - t}, {-1.0, -2.0}, {2.0, -2.0}, {2.0, 0.2 + 2.0 * t}};
    const Polygon one[] = {wall};
    const CutCellGeometry geo = build_geometry(one, g);
    const auto faces = subdivide_boundary(wall, wall, wall, g);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const auto in = faces_in(faces, g.index(i, j), false);
            const auto [rx, ry] = verify_gcl(geo, i, j, in);
            worst = std::max({worst, std::abs(rx), std::abs(ry)});
        }
    CHECK(worst <= 1e-12);
    const auto [fx, fy] = verify_gcl(CutCellGeometry::fluid_only(g), 0, 0, {});
    CHECK(fx == 0.0);
    CHECK(fy == 0.0);
}

TEST_CASE("subdivision splits at grid lines and keeps the perimeter") {
    const Grid g{10, 10, 0.0, 0.0, 0.1, 0.1};
    const Polygon inside{{0.12, 0.12}, {0.18, 0.12}, {0.15, 0.17}};
    CHECK(subdivide_boundary(inside, inside, inside, g).size() == 3);

    const Polygon tri_n{{0.12, 0.12}, {0.18, 0.12}, {0.15, 0.17}};
    const Polygon tri_np1{{0.15, 0.12}, {0.21, 0.12}, {0.18, 0.17}};
    std::size_t crossing = 0;
    for (const BoundaryFace& f : subdivide_boundary(tri_n, tri_np1, tri_n, g)) crossing += f.edge == 0;
    CHECK(crossing == 2);

    const Polygon sq = box(0.23, 0.31, 0.71, 0.79);
    double perim = 0.0;
    for (int k = 0; k < 4; ++k) perim += norm(sq[(k + 1) % 4] - sq[k]);
    for (double ang : {0.0, 0.1, 0.7, 1.3}) {
        const Polygon r = moved(sq, {0.0, 0.0}, ang, {0.47, 0.55});
        double total = 0.0;
        for (const BoundaryFace& f : subdivide_boundary(r, r, sq, g)) {
            total += f.S;
            CHECK(std::abs(norm(f.n) - 1.0) <= 1e-14);
        }
        CHECK(total == doctest::Approx(perim).epsilon(1e-12));
    }
}

TEST_CASE("owning cell of faces on grid lines goes to the fluid side") {
    const Grid g{4, 4, 0.0, 0.0, 0.25, 0.25};
    // Horizontal face on y = 0.5 with the fluid above.
    CHECK(owning_cell({0.3, 0.5}, {0.4, 0.5}, {0.0, 1.0}, g) == g.index(1, 2));
    CHECK(owning_cell({0.3, 0.5}, {0.4, 0.5}, {0.0, -1.0}, g) == g.index(1, 1));
    CHECK(owning_cell({2.0, 2.0}, {2.1, 2.0}, {0.0, 1.0}, g) == -1);
}

TEST_CASE("swept content of a translating face") {
    const Grid g{4, 4, 0.0, 0.0, 0.25, 0.25};
    const Conserved w0{1.2, 0.3, -0.4, 2.5};
    const Array2<Conserved> field(4, 4, w0);
    BoundaryFace f;
    f.a_n = f.a_np1 = {0.3, 0.35};
    f.b_n = f.b_np1 = {0.3, 0.45};
    CHECK(swept_contributions(f, field, g).empty());

    // Solid on the left of a -> b (upwards), normal (1, 0): moving right covers fluid.
    const double d = 0.05, S = 0.1;
    f.a_np1 = f.a_n + Vec2{d, 0.0};
    f.b_np1 = f.b_n + Vec2{d, 0.0};
    const auto c = swept_contributions(f, field, g);
    REQUIRE(c.size() == 1);
    CHECK(c[0].cell == g.index(1, 1));
    const Conserved expect = (S * d / g.cell_area()) * w0;
    for (int k = 0; k < 4; ++k) CHECK(c[0].dw[k] == doctest::Approx(expect[k]).epsilon(1e-14));
    CHECK(swept_area(f) == doctest::Approx(S * d).epsilon(1e-14));
}

TEST_CASE("randomized footprints: GCL and swept-volume partition") {
    std::mt19937_64 rng(20240611);
    const Grid g{12, 12, 0.0, 0.0, 1.0 / 12, 1.0 / 12};
    Array2<Conserved> w(12, 12);
    std::uniform_real_distribution<double> u(0.5, 2.0), pos(0.35, 0.65), small(-0.03, 0.03), rot(-0.2, 0.2);
    for (Conserved& c : w) c = {u(rng), u(rng) - 1.0, u(rng) - 1.0, u(rng) + 2.0};
    double gcl = 0.0, part = 0.0;
    for (int trial = 0; trial < 500; ++trial) {
        const Vec2 c{pos(rng), pos(rng)};
        const Polygon p0 = random_star(rng, c, 0.25);
        const Polygon p1 = moved(p0, {small(rng), small(rng)}, rot(rng), c);
        const Polygon s0[] = {p0}, s1[] = {p1};
        const CutCellGeometry g0 = build_geometry(s0, g), g1 = build_geometry(s1, g);
        const auto faces = subdivide_boundary(p0, p1, p0, g);
        for (long cell = 0; cell < g.cells(); ++cell) {
            const int i = g.i_of(cell), j = g.j_of(cell);
            const auto [a, b] = verify_gcl(g0, i, j, faces_in(faces, cell, false), false);
            const auto [e, h] = verify_gcl(g1, i, j, faces_in(faces, cell, true), true);
            gcl = std::max({gcl, std::abs(a), std::abs(b), std::abs(e), std::abs(h)});
        }
        Conserved swept{}, direct{};
        for (const BoundaryFace& f : faces)
            for (const SweptContribution& s : swept_contributions(f, w, g)) swept += s.dw;
        for (long cell = 0; cell < g.cells(); ++cell) direct += (g1.alpha[cell] - g0.alpha[cell]) * w[cell];
        for (int k = 0; k < 4; ++k) part = std::max(part, std::abs(swept[k] - direct[k]));
    }
    CHECK(gcl <= 1e-10);
    CHECK(part <= 1e-12);
}

TEST_CASE("volume fraction against Monte-Carlo") {
    std::mt19937_64 rng(7);
    const Grid g{1, 1, 0.0, 0.0, 1.0, 1.0};
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        const Polygon p = random_star(rng, {0.5, 0.5}, 0.7);
        const double alpha = volume_fraction(p, g, 0, 0);
        const int n = 200000;
        int hit = 0;
        for (int k = 0; k < n; ++k) hit += winding_number(p, {u01(rng), u01(rng)}) != 0;
        const double est = static_cast<double>(hit) / n;
        const double sigma = std::sqrt(std::max(alpha * (1.0 - alpha), 1e-12) / n);
        CHECK(std::abs(est - alpha) <= 3.0 * sigma + 1e-12);
    }
}

TEST_CASE("snapping and mass properties") {
    const Grid g{4, 4, 0.0, 0.0, 0.25, 0.25};
    const Polygon p = snap_to_grid({{0.5 + 1e-15, 0.1}, {0.9, 0.1}, {0.9, 0.3}}, g);
    CHECK(p[0].x == 0.5);

    const MassProperties m = mass_properties(box(0.0, 0.0, 2.0, 1.0), 3.0, {0.0, 0.0});
    CHECK(m.mass == doctest::Approx(6.0));
    CHECK(m.centroid == Vec2{1.0, 0.5});
    // rho * integral x^2 = 3 * (8/3) * 1, rho * integral y^2 = 3 * 2 * (1/3), rho * integral xy = 3 * 2 * 0.5
    CHECK(m.jxx == doctest::Approx(8.0));
    CHECK(m.jyy == doctest::Approx(2.0));
    CHECK(m.jxy == doctest::Approx(3.0));

    const Polygon c = circle_polygon({0.0, 0.0}, 1.0, 6, 0.0);
    CHECK(c.size() == 6);
    CHECK(c[0] == Vec2{1.0, 0.0});
    CHECK(signed_area(c) == doctest::Approx(1.5 * std::sqrt(3.0)));
}

}  // TEST_SUITE
