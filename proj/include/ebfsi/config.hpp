#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebfsi/coupling.hpp"
#include "ebfsi/flux.hpp"
#include "ebfsi/geometry.hpp"
#include "ebfsi/state.hpp"
#include "ebfsi/sweep.hpp"

namespace ebfsi {

/// Parse or validation failure; `line()` is 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0);
    int line() const noexcept { return line_; }

private:
    int line_;
};

enum class RegionShape { all, box, half_plane };

/// Initial fluid state over part of the domain. Later regions override
/// earlier ones; the first region must be `all`.
struct RegionSpec {
    RegionShape shape = RegionShape::all;
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;  // box: [x0,x1] x [y0,y1]
    Vec2 normal{1.0, 0.0};                          // half_plane: normal . x < offset
    double offset = 0.0;
    Primitive state{1.0, 0.0, 0.0, 1.0};

    bool contains(const Vec2& p) const;
    friend bool operator==(const RegionSpec&, const RegionSpec&) = default;
};

enum class BodyShape { polygon, circle, stadium, rectangle, mirror };

struct BodySpec {
    std::string name = "body";
    BodyShape shape = BodyShape::polygon;
    std::vector<Vec2> vertices;      // polygon
    Vec2 centre{};                   // circle
    double radius = 0.0;             // circle, stadium
    int segments = 64;               // circle: total, stadium: per cap
    double phase = 0.0;              // circle: angle of the first vertex
    Vec2 centre_a{}, centre_b{};     // stadium cap centres
    Vec2 lower{}, upper{};           // rectangle corners
    std::string source;              // mirror: name of an earlier body
    double mirror_y = 0.0;           // mirror: y -> 2 mirror_y - y
    std::optional<double> density;
    std::optional<double> mass;
    Vec2 velocity{};
    double omega = 0.0;
    std::optional<Vec2> pivot;
    bool fixed = false;
    bool lock_rotation = false;

    friend bool operator==(const BodySpec&, const BodySpec&) = default;
};

struct SideSpec {
    BoundaryKind kind = BoundaryKind::transmissive;
    Primitive inflow{1.0, 0.0, 0.0, 1.0};
    friend bool operator==(const SideSpec&, const SideSpec&) = default;
};

/// Built-in boundary profiles that depend on position and time.
enum class BoundaryPreset { none, double_mach };

struct ScenarioConfig {
    std::string name = "scenario";
    // [domain]
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    // [gas]
    double gamma = 1.4;
    // [run]
    double cfl = 0.5;
    double end_time = 0.0;
    long max_steps = -1;
    std::string scheme = "mp2";  // roe | mp2
    Limiter limiter = Limiter::monotonized_central;
    MixingWeights mixing = MixingWeights::fluid_fraction;
    // [boundary]
    SideSpec left, right, bottom, top;
    BoundaryPreset preset = BoundaryPreset::none;
    double preset_wall_x = 0.0;  // double_mach: start of the wall along y = y0
    double preset_mach = 10.0;
    Primitive preset_ahead{1.4, 0.0, 0.0, 1.0};
    // [output]
    std::string output_dir = "output";
    int snapshot_every = 0;  // steps; 0 = only the final state
    // [region], [body]
    std::vector<RegionSpec> regions;
    std::vector<BodySpec> bodies;

    Grid grid() const;
    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError describing the first violated rule.
void validate(const ScenarioConfig& cfg);

ScenarioConfig parse_config(std::istream& in, const std::string& source = "<input>");
ScenarioConfig load_config(const std::string& path);
void save_config(const ScenarioConfig& cfg, std::ostream& out);

FluxScheme make_scheme(const ScenarioConfig& cfg);
DomainBoundary make_boundary(const ScenarioConfig& cfg);
CouplingOptions make_options(const ScenarioConfig& cfg);

/// Reference outlines and rigid bodies of all [body] sections.
std::vector<BodyState> make_bodies(const ScenarioConfig& cfg);

/// Field at t = 0: regions applied at cell centres, geometry from the bodies.
CutCellField make_field(const ScenarioConfig& cfg);

}  // namespace ebfsi
