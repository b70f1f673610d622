#include "ebfsi/cut_cell.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace ebfsi {

CutCellGeometry CutCellGeometry::fluid_only(const Grid& grid) {
    return {grid, Array2<double>(grid.nx, grid.ny, 0.0), Array2<double>(grid.nx + 1, grid.ny, 0.0),
            Array2<double>(grid.nx, grid.ny + 1, 0.0)};
}

Polygon snap_to_grid(Polygon poly, const Grid& grid) {
    const double eps = kGeometryEpsilon * std::min(grid.dx, grid.dy);
    for (Vec2& v : poly) {
        const int i = static_cast<int>(std::lround((v.x - grid.x0) / grid.dx));
        if (std::abs(v.x - grid.x_line(i)) <= eps) v.x = grid.x_line(i);
        const int j = static_cast<int>(std::lround((v.y - grid.y0) / grid.dy));
        if (std::abs(v.y - grid.y_line(j)) <= eps) v.y = grid.y_line(j);
    }
    return poly;
}

long owning_cell(const Vec2& a, const Vec2& b, const Vec2& n, const Grid& grid) {
    int i, j;
    if (a.x == b.x && a.x == grid.x_line(grid.column_of(a.x))) {
        i = grid.column_of(a.x) - (n.x < 0.0 ? 1 : 0);
    } else {
        i = grid.column_of(0.5 * (a.x + b.x));
    }
    if (a.y == b.y && a.y == grid.y_line(grid.row_of(a.y))) {
        j = grid.row_of(a.y) - (n.y < 0.0 ? 1 : 0);
    } else {
        j = grid.row_of(0.5 * (a.y + b.y));
    }
    return grid.contains(i, j) ? grid.index(i, j) : -1;
}

namespace {

struct Split {
    double t = 0.0;
    std::optional<Vec2> pn;    // exact point at level n
    std::optional<Vec2> pnp1;  // exact point at level n+1
};

// Crossings of edge p->q with grid lines strictly inside the edge.
template <typename Set>
void edge_crossings(const Vec2& p, const Vec2& q, const Grid& grid, std::vector<Split>& out, Set set) {
    if (p.x != q.x) {
        const double lo = std::min(p.x, q.x), hi = std::max(p.x, q.x);
        for (int i = grid.column_of(lo); grid.x_line(i) < hi; ++i) {
            const double X = grid.x_line(i);
            if (X <= lo) continue;
            Split s;
            s.t = (X - p.x) / (q.x - p.x);
            set(s, Vec2{X, crossing_y(p, q, X)});
            out.push_back(s);
        }
    }
    if (p.y != q.y) {
        const double lo = std::min(p.y, q.y), hi = std::max(p.y, q.y);
        for (int j = grid.row_of(lo); grid.y_line(j) < hi; ++j) {
            const double Y = grid.y_line(j);
            if (Y <= lo) continue;
            Split s;
            s.t = (Y - p.y) / (q.y - p.y);
            set(s, Vec2{crossing_x(p, q, Y), Y});
            out.push_back(s);
        }
    }
}

}  // namespace

std::vector<BoundaryFace> subdivide_boundary(const Polygon& poly_n, const Polygon& poly_np1,
                                             const Polygon& reference, const Grid& grid, int body_id) {
    const std::size_t nv = poly_n.size();
    if (nv < 3 || poly_np1.size() != nv || reference.size() != nv)
        throw std::invalid_argument("subdivide_boundary: outlines must share vertex numbering");
    const double eps_len = kGeometryEpsilon * std::min(grid.dx, grid.dy);
    std::vector<BoundaryFace> faces;
    std::vector<Split> splits;
    for (std::size_t k = 0; k < nv; ++k) {
        const Vec2& pn = poly_n[k];
        const Vec2& qn = poly_n[(k + 1) % nv];
        const Vec2& pp = poly_np1[k];
        const Vec2& qp = poly_np1[(k + 1) % nv];
        const double len = std::max(norm(qn - pn), norm(qp - pp));
        if (!(len > eps_len)) continue;
        const double tol = eps_len / len;

        splits.clear();
        edge_crossings(pn, qn, grid, splits, [](Split& s, const Vec2& v) { s.pn = v; });
        edge_crossings(pp, qp, grid, splits, [](Split& s, const Vec2& v) { s.pnp1 = v; });
        std::sort(splits.begin(), splits.end(), [](const Split& a, const Split& b) { return a.t < b.t; });

        // Merge near-coincident splits and drop those next to the end points.
        std::vector<Split> kept;
        kept.push_back({0.0, pn, pp});
        for (const Split& s : splits) {
            if (s.t <= kept.back().t + tol) {
                if (kept.size() > 1) {
                    if (!kept.back().pn && s.pn) kept.back().pn = s.pn;
                    if (!kept.back().pnp1 && s.pnp1) kept.back().pnp1 = s.pnp1;
                }
                continue;
            }
            if (s.t >= 1.0 - tol) continue;
            kept.push_back(s);
        }
        kept.push_back({1.0, qn, qp});

        for (std::size_t m = 0; m + 1 < kept.size(); ++m) {
            const Split& s0 = kept[m];
            const Split& s1 = kept[m + 1];
            BoundaryFace f;
            f.body_id = body_id;
            f.edge = static_cast<int>(k);
            f.t0 = s0.t;
            f.t1 = s1.t;
            f.a_n = s0.pn ? *s0.pn : lerp(pn, qn, s0.t);
            f.b_n = s1.pn ? *s1.pn : lerp(pn, qn, s1.t);
            f.a_np1 = s0.pnp1 ? *s0.pnp1 : lerp(pp, qp, s0.t);
            f.b_np1 = s1.pnp1 ? *s1.pnp1 : lerp(pp, qp, s1.t);
            const Vec2 d = f.b_n - f.a_n;
            f.S = norm(d);
            if (f.S > 0.0) f.n = {d.y / f.S, -d.x / f.S};
            f.X_F = 0.5 * (f.a_n + f.b_n);
            f.X_F0 = lerp(reference[k], reference[(k + 1) % nv], 0.5 * (s0.t + s1.t));
            f.cell_n = owning_cell(f.a_n, f.b_n, f.n, grid);
            const Vec2 d1 = f.b_np1 - f.a_np1;
            const double s1n = norm(d1);
            const Vec2 n1 = s1n > 0.0 ? Vec2{d1.y / s1n, -d1.x / s1n} : f.n;
            f.cell_np1 = owning_cell(f.a_np1, f.b_np1, n1, grid);
            if (f.cell_n < 0 && f.cell_np1 < 0) continue;
            faces.push_back(f);
        }
    }
    return faces;
}

CutCellGeometry build_geometry(std::span<const Polygon> solids, const Grid& grid) {
    CutCellGeometry g = CutCellGeometry::fluid_only(grid);
    if (solids.empty()) return g;

    struct Box { double x0, x1, y0, y1; };
    std::vector<Box> boxes;
    for (const Polygon& p : solids) {
        validate_polygon(p);
        Box b{p[0].x, p[0].x, p[0].y, p[0].y};
        for (const Vec2& v : p) {
            b.x0 = std::min(b.x0, v.x); b.x1 = std::max(b.x1, v.x);
            b.y0 = std::min(b.y0, v.y); b.y1 = std::max(b.y1, v.y);
        }
        boxes.push_back(b);
    }

    for (int i = 0; i <= grid.nx; ++i) {
        const double X = grid.x_line(i);
        std::vector<Interval> cover;
        for (std::size_t b = 0; b < solids.size(); ++b) {
            if (X < boxes[b].x0 || X > boxes[b].x1) continue;
            auto c = vertical_cover(solids[b], X);
            cover.insert(cover.end(), c.begin(), c.end());
        }
        if (cover.empty()) continue;
        cover = merge_intervals(std::move(cover));
        // Divide by the face's own length so that a fully covered face gives exactly 1.
        for (int j = 0; j < grid.ny; ++j) {
            const double lo = grid.y_line(j), hi = grid.y_line(j + 1);
            g.kappa_x(i, j) = std::clamp(covered_length(cover, lo, hi) / (hi - lo), 0.0, 1.0);
        }
    }
    for (int j = 0; j <= grid.ny; ++j) {
        const double Y = grid.y_line(j);
        std::vector<Interval> cover;
        for (std::size_t b = 0; b < solids.size(); ++b) {
            if (Y < boxes[b].y0 || Y > boxes[b].y1) continue;
            auto c = horizontal_cover(solids[b], Y);
            cover.insert(cover.end(), c.begin(), c.end());
        }
        if (cover.empty()) continue;
        cover = merge_intervals(std::move(cover));
        for (int i = 0; i < grid.nx; ++i) {
            const double lo = grid.x_line(i), hi = grid.x_line(i + 1);
            g.kappa_y(i, j) = std::clamp(covered_length(cover, lo, hi) / (hi - lo), 0.0, 1.0);
        }
    }

    // Green's formula on the solid part of each cell with the field (x - x_i, 0):
    // area = dx * kappa_r * dy + sum over outline pieces of (x_mid - x_i) * dy_piece.
    Array2<double> acc(grid.nx, grid.ny, 0.0);
    for (const Polygon& p : solids) {
        for (const BoundaryFace& f : subdivide_boundary(p, p, p, grid)) {
            if (f.cell_n < 0) continue;
            const int i = grid.i_of(f.cell_n);
            const int j = grid.j_of(f.cell_n);
            acc(i, j) += (0.5 * (f.a_n.x + f.b_n.x) - grid.x_line(i)) * (f.b_n.y - f.a_n.y);
        }
    }
    const double area = grid.cell_area();
    constexpr double snap = 1e-13;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            double a = (grid.dx * g.kappa_r(i, j) * grid.dy + acc(i, j)) / area;
            if (a < snap) a = 0.0;
            if (a > 1.0 - snap) a = 1.0;
            g.alpha(i, j) = a;
        }
    }
    return g;
}

double swept_area(const BoundaryFace& f) {
    return signed_area(Polygon{f.a_n, f.a_np1, f.b_np1, f.b_n});
}

std::vector<SweptContribution> swept_contributions(const BoundaryFace& f, const Array2<Conserved>& field_n,
                                                   const Grid& grid) {
    std::vector<SweptContribution> out;
    if (f.a_n == f.a_np1 && f.b_n == f.b_np1) return out;
    const Polygon quad{f.a_n, f.a_np1, f.b_np1, f.b_n};
    double x0 = quad[0].x, x1 = x0, y0 = quad[0].y, y1 = y0;
    for (const Vec2& v : quad) {
        x0 = std::min(x0, v.x); x1 = std::max(x1, v.x);
        y0 = std::min(y0, v.y); y1 = std::max(y1, v.y);
    }
    const int i0 = std::max(grid.column_of(x0), 0);
    const int i1 = std::min(grid.column_of(x1), grid.nx - 1);
    const int j0 = std::max(grid.row_of(y0), 0);
    const int j1 = std::min(grid.row_of(y1), grid.ny - 1);
    const double inv = 1.0 / grid.cell_area();
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            const Polygon c = clip_to_rect(quad, grid.x_line(i), grid.y_line(j), grid.x_line(i + 1), grid.y_line(j + 1));
            const double a = signed_area(c);
            if (a == 0.0) continue;
            out.push_back({grid.index(i, j), (a * inv) * field_n(i, j)});
        }
    }
    return out;
}

std::pair<double, double> verify_gcl(const CutCellGeometry& geom, int i, int j,
                                     std::span<const BoundaryFace> faces, bool use_np1) {
    double sx = 0.0, sy = 0.0;
    for (const BoundaryFace& f : faces) {
        const Vec2 d = use_np1 ? f.b_np1 - f.a_np1 : f.b_n - f.a_n;
        sx += d.y;   // S * n_x
        sy += -d.x;  // S * n_y
    }
    const Grid& g = geom.grid;
    return {geom.kappa_l(i, j) - geom.kappa_r(i, j) - sx / g.dy, geom.kappa_b(i, j) - geom.kappa_t(i, j) - sy / g.dx};
}

}  // namespace ebfsi
