#include "ebfsi/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ebfsi/riemann.hpp"

namespace ebfsi {

namespace {

constexpr double kPi = std::numbers::pi;

RegionSpec everywhere(const Primitive& q) {
    RegionSpec r;
    r.shape = RegionShape::all;
    r.state = q;
    return r;
}

RegionSpec box(double x0, double y0, double x1, double y1, const Primitive& q) {
    RegionSpec r;
    r.shape = RegionShape::box;
    r.x0 = x0;
    r.y0 = y0;
    r.x1 = x1;
    r.y1 = y1;
    r.state = q;
    return r;
}

SideSpec side(BoundaryKind k, const Primitive& q = {1.0, 0.0, 0.0, 1.0}) { return {k, q}; }

void require(int resolution, int lo, const char* who) {
    if (resolution < lo) throw std::invalid_argument(std::string(who) + ": resolution too small");
}

}  // namespace

ScenarioConfig build_piston_1d(int resolution) {
    require(resolution, 16, "build_piston_1d");
    ScenarioConfig c;
    c.name = "piston";
    c.nx = resolution;
    c.ny = 1;
    c.x0 = 0.0;
    c.x1 = 7.0;
    const double dy = 7.0 / resolution;
    c.y0 = 0.0;
    c.y1 = dy;
    c.end_time = 0.003;
    c.left = c.right = c.bottom = c.top = side(BoundaryKind::periodic);
    c.regions = {everywhere({10.0, 0.0, 0.0, 1e6}), box(2.0, -1.0, 5.0, 1.0 + dy, {1.0, 0.0, 0.0, 1e5})};
    BodySpec p;
    p.name = "piston";
    p.shape = BodyShape::rectangle;
    p.lower = {1.75, -dy};
    p.upper = {2.25, 2.0 * dy};
    p.density = 2.0;
    p.lock_rotation = true;
    c.bodies = {p};
    return c;
}

ScenarioConfig build_sod(int resolution) {
    require(resolution, 16, "build_sod");
    ScenarioConfig c;
    c.name = "sod";
    c.nx = resolution;
    c.ny = 1;
    c.x1 = 1.0;
    c.y1 = 1.0 / resolution;
    c.end_time = 0.2;
    c.left = c.right = side(BoundaryKind::transmissive);
    c.bottom = c.top = side(BoundaryKind::periodic);
    c.regions = {everywhere({1.0, 0.0, 0.0, 1.0}), box(0.5, -1.0, 2.0, 2.0, {0.125, 0.0, 0.0, 0.1})};
    return c;
}

ScenarioConfig build_double_mach(bool aligned, int resolution) {
    require(resolution, 16, "build_double_mach");
    const GasModel gas(1.4);
    const Primitive ahead{1.4, 0.0, 0.0, 1.0};
    const double mach = 10.0;
    const double xw = 1.0 / 6.0;
    Primitive behind = post_shock_state(ahead, mach, gas);

    ScenarioConfig c;
    c.end_time = 0.2;
    c.preset_ahead = ahead;
    c.preset_mach = mach;
    c.preset_wall_x = xw;
    if (aligned) {
        // Wall along y = 0 for x >= xw; incident shock at 60 degrees to it.
        c.name = "dmr-aligned";
        c.x1 = 3.2;
        c.y1 = 1.0;
        c.nx = resolution;
        c.ny = static_cast<int>(std::lround(resolution / 3.2));
        c.preset = BoundaryPreset::double_mach;
        c.left = side(BoundaryKind::inflow, {behind.rho, behind.u * std::sqrt(3.0) / 2.0, -behind.u / 2.0, behind.p});
        c.right = side(BoundaryKind::transmissive);
        c.bottom = side(BoundaryKind::reflective);
        c.top = side(BoundaryKind::transmissive);
        Primitive b = c.left.inflow;
        RegionSpec post;
        post.shape = RegionShape::half_plane;
        post.normal = {std::sqrt(3.0) / 2.0, -0.5};
        post.offset = std::sqrt(3.0) / 2.0 * xw;
        post.state = b;
        c.regions = {everywhere(ahead), post};
        return c;
    }
    // Vertical shock at x = xw; wedge surface through (xw, 0) at 30 degrees.
    c.name = "dmr-wedge";
    c.x1 = 2.8;
    c.y1 = 2.2;
    c.nx = resolution;
    c.ny = static_cast<int>(std::lround(resolution * 2.2 / 2.8));
    c.left = side(BoundaryKind::inflow, behind);
    c.right = side(BoundaryKind::transmissive);
    c.bottom = side(BoundaryKind::reflective);
    c.top = side(BoundaryKind::transmissive);
    c.regions = {everywhere(ahead), box(-1.0, -1.0, xw, c.y1 + 1.0, behind)};
    const double L = 0.2;
    const double far = c.x1 + 0.2;
    const double t30 = std::tan(kPi / 6.0);
    BodySpec wedge;
    wedge.name = "wedge";
    wedge.shape = BodyShape::polygon;
    wedge.vertices = {{xw - L * std::cos(kPi / 6.0), -L * std::sin(kPi / 6.0)},
                      {far, -L * std::sin(kPi / 6.0)},
                      {far, (far - xw) * t30}};
    wedge.fixed = true;
    c.bodies = {wedge};
    return c;
}

ScenarioConfig build_lift_off(int resolution) {
    require(resolution, 80, "build_lift_off");
    const GasModel gas(1.4);
    const Primitive ambient{1.0, 0.0, 0.0, 1.0};
    const Primitive behind = post_shock_state(ambient, 3.0, gas);
    ScenarioConfig c;
    c.name = "lift-off";
    c.nx = resolution;
    c.ny = resolution / 5;
    c.x1 = 1.0;
    c.y1 = 0.2;
    c.end_time = 0.255;
    c.left = side(BoundaryKind::inflow, behind);
    c.right = side(BoundaryKind::transmissive);
    c.bottom = c.top = side(BoundaryKind::reflective);
    c.regions = {everywhere(ambient), box(-1.0, -1.0, 0.08, 1.0, behind)};
    BodySpec cyl;
    cyl.name = "cylinder";
    cyl.shape = BodyShape::circle;
    cyl.centre = {0.15, 0.05};
    cyl.radius = 0.05;
    cyl.segments = std::max(16, static_cast<int>(std::lround(1240.0 * resolution / 1600.0)));
    // Flat lowest face, just above the wall.
    cyl.phase = -kPi / 2.0 + kPi / cyl.segments;
    cyl.density = 7.6;
    c.bodies = {cyl};
    return c;
}

ScenarioConfig build_flapping_doors(int resolution) {
    require(resolution, 80, "build_flapping_doors");
    const GasModel gas(1.4);
    const Primitive ambient{1.0, 0.0, 0.0, 1.0};
    const Primitive behind = post_shock_state(ambient, 3.0, gas);
    ScenarioConfig c;
    c.name = "flapping-doors";
    c.nx = resolution;
    c.ny = resolution / 4;
    c.x1 = 2.0;
    c.y1 = 0.5;
    c.end_time = 0.5;
    c.left = side(BoundaryKind::inflow, behind);
    c.right = side(BoundaryKind::transmissive);
    c.bottom = c.top = side(BoundaryKind::reflective);
    c.regions = {everywhere(ambient), box(-1.0, -1.0, 0.43, 1.0, behind)};
    BodySpec door;
    door.name = "door-bottom";
    door.shape = BodyShape::stadium;
    door.centre_a = {0.5, 0.025};
    door.centre_b = {0.5, 0.225};
    door.radius = 0.025;
    door.segments = 2 * std::max(4, resolution / 50);
    door.density = 0.1;
    door.pivot = Vec2{0.5, 0.025};
    BodySpec top;
    top.name = "door-top";
    top.shape = BodyShape::mirror;
    top.source = door.name;
    top.mirror_y = 0.25;
    c.bodies = {door, top};
    return c;
}

std::vector<std::string> scenario_names() {
    return {"piston", "sod", "dmr-aligned", "dmr-wedge", "lift-off", "flapping-doors"};
}

int default_resolution(const std::string& name) {
    if (name == "piston") return 400;
    if (name == "sod") return 400;
    if (name == "dmr-aligned") return 384;
    if (name == "dmr-wedge") return 336;
    if (name == "lift-off") return 400;
    if (name == "flapping-doors") return 400;
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

ScenarioConfig build_named(const std::string& name, int resolution) {
    if (resolution <= 0) resolution = default_resolution(name);
    if (name == "piston") return build_piston_1d(resolution);
    if (name == "sod") return build_sod(resolution);
    if (name == "dmr-aligned") return build_double_mach(true, resolution);
    if (name == "dmr-wedge") return build_double_mach(false, resolution);
    if (name == "lift-off") return build_lift_off(resolution);
    if (name == "flapping-doors") return build_flapping_doors(resolution);
    throw std::invalid_argument("unknown scenario '" + name + "'");
}

DmrFrame dmr_frame(const ScenarioConfig& cfg, bool aligned) {
    return {cfg.preset_wall_x, aligned ? 0.0 : kPi / 6.0};
}

void dmr_to_wall_frame(const DmrFrame& f, double x, double y, double& xi, double& eta) {
    const double c = std::cos(f.angle), s = std::sin(f.angle);
    xi = (x - f.wall_x) * c + y * s;
    eta = -(x - f.wall_x) * s + y * c;
}

void dmr_from_wall_frame(const DmrFrame& f, double xi, double eta, double& x, double& y) {
    const double c = std::cos(f.angle), s = std::sin(f.angle);
    x = f.wall_x + xi * c - eta * s;
    y = xi * s + eta * c;
}

}  // namespace ebfsi
