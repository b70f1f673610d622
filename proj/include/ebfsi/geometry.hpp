#pragma once

#include <cmath>
#include <vector>

#include "ebfsi/grid.hpp"

namespace ebfsi {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend constexpr Vec2 operator*(double s, const Vec2& a) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator*(const Vec2& a, double s) { return {s * a.x, s * a.y}; }
    friend constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
constexpr Vec2 lerp(const Vec2& a, const Vec2& b, double t) { return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)}; }

/// Closed vertex loop; counter-clockwise loops have the solid on their left.
using Polygon = std::vector<Vec2>;

double signed_area(const Polygon& poly);
Vec2 centroid(const Polygon& poly);

/// Throws std::invalid_argument for fewer than 3 vertices, non-finite
/// coordinates or zero area.
void validate_polygon(const Polygon& poly);

/// Makes the loop counter-clockwise.
Polygon counter_clockwise(Polygon poly);

/// Clips `subject` against the axis-aligned rectangle (Sutherland-Hodgman).
/// The shoelace area of the result equals the integral of the winding number
/// of `subject` over the rectangle, so self-intersecting loops give signed areas.
Polygon clip_to_rect(const Polygon& subject, double x0, double y0, double x1, double y1);

/// Area of solid inside cell (i, j) divided by the cell area, by clipping.
double volume_fraction(const Polygon& solid, const Grid& grid, int i, int j);

struct Apertures {
    double l = 0.0;
    double r = 0.0;
    double b = 0.0;
    double t = 0.0;
};

/// Covered fraction of each face of cell (i, j) (closed solid).
Apertures face_apertures(const Polygon& solid, const Grid& grid, int i, int j);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

/// Intersection point of edge p->q with the vertical line x = X (or the
/// horizontal line y = Y). Endpoints lying on the line are returned exactly.
double crossing_y(const Vec2& p, const Vec2& q, double X);
double crossing_x(const Vec2& p, const Vec2& q, double Y);

/// Parts of the line x = X (y = Y) inside the closed polygon, sorted and merged.
std::vector<Interval> vertical_cover(const Polygon& poly, double X);
std::vector<Interval> horizontal_cover(const Polygon& poly, double Y);

/// Union of sorted interval lists.
std::vector<Interval> merge_intervals(std::vector<Interval> intervals);

/// Length of [lo, hi] covered by `cover`.
double covered_length(const std::vector<Interval>& cover, double lo, double hi);

/// Uniform-density lamina: mass, centroid and second moments about `ref`.
struct MassProperties {
    double mass = 0.0;
    Vec2 centroid{};
    double jxx = 0.0;  // integral of (x - ref.x)^2 dm
    double jyy = 0.0;  // integral of (y - ref.y)^2 dm
    double jxy = 0.0;  // integral of (x - ref.x)(y - ref.y) dm
};
MassProperties mass_properties(const Polygon& poly, double density, const Vec2& ref);

/// Regular polygon approximating a circle, counter-clockwise, first vertex at
/// angle `phase`.
Polygon circle_polygon(const Vec2& centre, double radius, int n, double phase = 0.0);

/// Winding number of `poly` around p (nonzero inside a CCW loop).
int winding_number(const Polygon& poly, const Vec2& p);

}  // namespace ebfsi
