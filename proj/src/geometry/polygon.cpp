#include "ebfsi/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

namespace ebfsi {

double signed_area(const Polygon& poly) {
    const std::size_t n = poly.size();
    if (n < 3) return 0.0;
    // Relative to the first vertex: keeps round-off proportional to the
    // polygon size rather than to its distance from the origin.
    const Vec2 o = poly[0];
    double s = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) s += cross(poly[k] - o, poly[k + 1] - o);
    return 0.5 * s;
}

Vec2 centroid(const Polygon& poly) {
    const std::size_t n = poly.size();
    const Vec2 o = poly.empty() ? Vec2{} : poly[0];
    double a = 0.0;
    Vec2 c{};
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 p = poly[k] - o;
        const Vec2 q = poly[(k + 1) % n] - o;
        const double w = cross(p, q);
        a += w;
        c += w * (p + q);
    }
    if (a == 0.0) throw std::invalid_argument("centroid: zero-area polygon");
    return o + (1.0 / (3.0 * a)) * c;
}

void validate_polygon(const Polygon& poly) {
    if (poly.size() < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
    for (const Vec2& v : poly)
        if (!std::isfinite(v.x) || !std::isfinite(v.y)) throw std::invalid_argument("polygon has non-finite vertex");
    if (signed_area(poly) == 0.0) throw std::invalid_argument("degenerate polygon (zero area)");
}

Polygon counter_clockwise(Polygon poly) {
    if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    return poly;
}

namespace {

// One Sutherland-Hodgman pass against the half-plane side(v) >= 0.
template <typename Side, typename Cut>
Polygon clip_pass(const Polygon& in, Side side, Cut cut) {
    Polygon out;
    const std::size_t n = in.size();
    if (n == 0) return out;
    out.reserve(n + 4);
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = in[k];
        const Vec2& q = in[(k + 1) % n];
        const bool pin = side(p);
        const bool qin = side(q);
        if (pin) out.push_back(p);
        if (pin != qin) out.push_back(cut(p, q));
    }
    return out;
}

}  // namespace

double crossing_y(const Vec2& p, const Vec2& q, double X) {
    if (p.x == X) return p.y;
    if (q.x == X) return q.y;
    return p.y + (X - p.x) * (q.y - p.y) / (q.x - p.x);
}

double crossing_x(const Vec2& p, const Vec2& q, double Y) {
    if (p.y == Y) return p.x;
    if (q.y == Y) return q.x;
    return p.x + (Y - p.y) * (q.x - p.x) / (q.y - p.y);
}

Polygon clip_to_rect(const Polygon& subject, double x0, double y0, double x1, double y1) {
    Polygon r = clip_pass(
        subject, [&](const Vec2& v) { return v.x >= x0; },
        [&](const Vec2& p, const Vec2& q) { return Vec2{x0, crossing_y(p, q, x0)}; });
    r = clip_pass(
        r, [&](const Vec2& v) { return v.x <= x1; },
        [&](const Vec2& p, const Vec2& q) { return Vec2{x1, crossing_y(p, q, x1)}; });
    r = clip_pass(
        r, [&](const Vec2& v) { return v.y >= y0; },
        [&](const Vec2& p, const Vec2& q) { return Vec2{crossing_x(p, q, y0), y0}; });
    r = clip_pass(
        r, [&](const Vec2& v) { return v.y <= y1; },
        [&](const Vec2& p, const Vec2& q) { return Vec2{crossing_x(p, q, y1), y1}; });
    return r;
}

double volume_fraction(const Polygon& solid, const Grid& grid, int i, int j) {
    validate_polygon(solid);
    const Polygon c = clip_to_rect(solid, grid.x_line(i), grid.y_line(j), grid.x_line(i + 1), grid.y_line(j + 1));
    const double a = std::abs(signed_area(c)) / grid.cell_area();
    return std::clamp(a, 0.0, 1.0);
}

namespace {

// Crossings of the line coord == L, using the half-open rule with the given
// bias; `along` extracts the running coordinate of the crossing.
template <typename Coord, typename Along>
void cover_with_bias(const Polygon& poly, double L, bool closed_low, Coord coord, Along along,
                     std::vector<Interval>& out) {
    std::vector<double> c;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& p = poly[k];
        const Vec2& q = poly[(k + 1) % n];
        const bool pl = closed_low ? coord(p) <= L : coord(p) < L;
        const bool ql = closed_low ? coord(q) <= L : coord(q) < L;
        if (pl != ql) c.push_back(along(p, q, L));
    }
    std::sort(c.begin(), c.end());
    for (std::size_t k = 0; k + 1 < c.size(); k += 2)
        if (c[k + 1] > c[k]) out.push_back({c[k], c[k + 1]});
}

}  // namespace

std::vector<Interval> merge_intervals(std::vector<Interval> iv) {
    std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (const Interval& x : iv) {
        if (!out.empty() && x.lo <= out.back().hi)
            out.back().hi = std::max(out.back().hi, x.hi);
        else
            out.push_back(x);
    }
    return out;
}

std::vector<Interval> vertical_cover(const Polygon& poly, double X) {
    std::vector<Interval> iv;
    auto cx = [](const Vec2& v) { return v.x; };
    for (bool closed : {false, true}) cover_with_bias(poly, X, closed, cx, crossing_y, iv);
    return merge_intervals(std::move(iv));
}

std::vector<Interval> horizontal_cover(const Polygon& poly, double Y) {
    std::vector<Interval> iv;
    auto cy = [](const Vec2& v) { return v.y; };
    for (bool closed : {false, true}) cover_with_bias(poly, Y, closed, cy, crossing_x, iv);
    return merge_intervals(std::move(iv));
}

double covered_length(const std::vector<Interval>& cover, double lo, double hi) {
    double s = 0.0;
    for (const Interval& x : cover) {
        if (x.hi <= lo) continue;
        if (x.lo >= hi) break;
        s += std::min(hi, x.hi) - std::max(lo, x.lo);
    }
    return s;
}

Apertures face_apertures(const Polygon& solid, const Grid& grid, int i, int j) {
    validate_polygon(solid);
    const double xl = grid.x_line(i), xr = grid.x_line(i + 1);
    const double yb = grid.y_line(j), yt = grid.y_line(j + 1);
    Apertures a;
    a.l = covered_length(vertical_cover(solid, xl), yb, yt) / (yt - yb);
    a.r = covered_length(vertical_cover(solid, xr), yb, yt) / (yt - yb);
    a.b = covered_length(horizontal_cover(solid, yb), xl, xr) / (xr - xl);
    a.t = covered_length(horizontal_cover(solid, yt), xl, xr) / (xr - xl);
    return a;
}

MassProperties mass_properties(const Polygon& poly, double density, const Vec2& ref) {
    validate_polygon(poly);
    double area = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2 a = poly[k] - ref;
        const Vec2 b = poly[(k + 1) % n] - ref;
        const double t = 0.5 * cross(a, b);
        area += t;
        sxx += t / 6.0 * (a.x * a.x + a.x * b.x + b.x * b.x);
        syy += t / 6.0 * (a.y * a.y + a.y * b.y + b.y * b.y);
        sxy += t / 12.0 * (2.0 * a.x * a.y + a.x * b.y + b.x * a.y + 2.0 * b.x * b.y);
    }
    const double s = area < 0.0 ? -density : density;
    MassProperties m;
    m.mass = s * area;
    m.centroid = centroid(poly);
    m.jxx = s * sxx;
    m.jyy = s * syy;
    m.jxy = s * sxy;
    return m;
}

Polygon circle_polygon(const Vec2& centre, double radius, int n, double phase) {
    if (n < 3 || !(radius > 0.0)) throw std::invalid_argument("circle_polygon: need n >= 3 and radius > 0");
    Polygon p(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double a = phase + 2.0 * std::numbers::pi * k / n;
        p[k] = {centre.x + radius * std::cos(a), centre.y + radius * std::sin(a)};
    }
    return p;
}

int winding_number(const Polygon& poly, const Vec2& pt) {
    int w = 0;
    const std::size_t n = poly.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Vec2& a = poly[k];
        const Vec2& b = poly[(k + 1) % n];
        if (a.y <= pt.y) {
            if (b.y > pt.y && cross(b - a, pt - a) > 0.0) ++w;
        } else if (b.y <= pt.y && cross(b - a, pt - a) < 0.0) {
            --w;
        }
    }
    return w;
}

}  // namespace ebfsi
