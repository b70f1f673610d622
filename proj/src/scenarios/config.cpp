#include "ebfsi/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <sstream>

#include "ebfsi/riemann.hpp"

namespace ebfsi {

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

bool RegionSpec::contains(const Vec2& p) const {
    switch (shape) {
        case RegionShape::all: return true;
        case RegionShape::box: return p.x >= x0 && p.x <= x1 && p.y >= y0 && p.y <= y1;
        case RegionShape::half_plane: return dot(normal, p) < offset;
    }
    return false;
}

Grid ScenarioConfig::grid() const {
    return {nx, ny, x0, y0, (x1 - x0) / nx, (y1 - y0) / ny};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> numbers(const std::string& v, int line) {
    std::vector<double> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) {
        double d = 0.0;
        const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), d);
        if (r.ec != std::errc() || r.ptr != tok.data() + tok.size()) throw ConfigError("not a number: '" + tok + "'", line);
        out.push_back(d);
    }
    return out;
}

double number(const std::string& v, int line) {
    const auto n = numbers(v, line);
    if (n.size() != 1) throw ConfigError("expected one number, got '" + v + "'", line);
    return n[0];
}

long integer(const std::string& v, int line) {
    long x = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
    if (r.ec != std::errc() || r.ptr != v.data() + v.size()) throw ConfigError("not an integer: '" + v + "'", line);
    return x;
}

Vec2 vec2(const std::string& v, int line) {
    const auto n = numbers(v, line);
    if (n.size() != 2) throw ConfigError("expected two numbers, got '" + v + "'", line);
    return {n[0], n[1]};
}

Primitive primitive(const std::string& v, int line) {
    const auto n = numbers(v, line);
    if (n.size() != 4) throw ConfigError("expected 'rho u v p', got '" + v + "'", line);
    return {n[0], n[1], n[2], n[3]};
}

bool boolean(const std::string& v, int line) {
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("expected true/false, got '" + v + "'", line);
}

template <typename E>
E choice(const std::string& v, const std::map<std::string, E>& m, int line) {
    const auto it = m.find(v);
    if (it != m.end()) return it->second;
    std::string opts;
    for (const auto& [k, _] : m) opts += (opts.empty() ? "" : ", ") + k;
    throw ConfigError("unknown value '" + v + "' (expected one of: " + opts + ")", line);
}

const std::map<std::string, BoundaryKind> kKinds{{"periodic", BoundaryKind::periodic},
                                                 {"transmissive", BoundaryKind::transmissive},
                                                 {"reflective", BoundaryKind::reflective},
                                                 {"inflow", BoundaryKind::inflow}};
const std::map<std::string, Limiter> kLimiters{{"minmod", Limiter::minmod},
                                               {"mc", Limiter::monotonized_central},
                                               {"van_leer", Limiter::van_leer},
                                               {"superbee", Limiter::superbee}};
const std::map<std::string, MixingWeights> kMixing{{"beta", MixingWeights::fluid_fraction},
                                                   {"alpha", MixingWeights::solid_fraction}};
const std::map<std::string, BoundaryPreset> kPresets{{"none", BoundaryPreset::none},
                                                     {"double_mach", BoundaryPreset::double_mach}};
const std::map<std::string, RegionShape> kRegionShapes{
    {"all", RegionShape::all}, {"box", RegionShape::box}, {"half_plane", RegionShape::half_plane}};
const std::map<std::string, BodyShape> kBodyShapes{{"polygon", BodyShape::polygon},
                                                   {"circle", BodyShape::circle},
                                                   {"stadium", BodyShape::stadium},
                                                   {"rectangle", BodyShape::rectangle},
                                                   {"mirror", BodyShape::mirror}};

template <typename E>
std::string name_of(E e, const std::map<std::string, E>& m) {
    for (const auto& [k, v] : m)
        if (v == e) return k;
    return "?";
}

using Setter = std::function<void(const std::string&, int)>;

}  // namespace

void validate(const ScenarioConfig& c) {
    if (c.nx < 16 || c.ny < 1) throw ConfigError("domain: nx must be >= 16 and ny >= 1");
    if (c.ny < 16 && !(c.bottom.kind == BoundaryKind::periodic && c.top.kind == BoundaryKind::periodic))
        throw ConfigError("domain: ny must be >= 16 unless the strip is periodic in y");
    if (!(c.x1 > c.x0) || !(c.y1 > c.y0)) throw ConfigError("domain: empty extent");
    if (!(c.gamma > 1.0)) throw ConfigError("gas: gamma must be > 1");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw ConfigError("run: cfl must be in (0, 1]");
    if (!(c.end_time > 0.0) && c.max_steps <= 0) throw ConfigError("run: need end_time > 0 or max_steps > 0");
    if (c.scheme != "roe" && c.scheme != "mp2") throw ConfigError("run: scheme must be roe or mp2");
    if ((c.left.kind == BoundaryKind::periodic) != (c.right.kind == BoundaryKind::periodic))
        throw ConfigError("boundary: left and right must both be periodic or neither");
    if ((c.bottom.kind == BoundaryKind::periodic) != (c.top.kind == BoundaryKind::periodic))
        throw ConfigError("boundary: bottom and top must both be periodic or neither");
    const GasModel gas(c.gamma);
    auto check_state = [&](const Primitive& q, const std::string& where) {
        if (!(q.rho > 0.0)) throw ConfigError(where + ": density must be positive");
        if (!(q.p > 0.0)) throw ConfigError(where + ": pressure must be positive");
        if (!std::isfinite(q.u) || !std::isfinite(q.v)) throw ConfigError(where + ": velocity must be finite");
    };
    for (const auto* s : {&c.left, &c.right, &c.bottom, &c.top})
        if (s->kind == BoundaryKind::inflow) check_state(s->inflow, "boundary inflow");
    if (c.preset == BoundaryPreset::double_mach) check_state(c.preset_ahead, "boundary preset");
    if (c.regions.empty() || c.regions[0].shape != RegionShape::all)
        throw ConfigError("region: the first region must have shape = all");
    for (std::size_t k = 0; k < c.regions.size(); ++k) check_state(c.regions[k].state, "region " + std::to_string(k + 1));
    for (std::size_t k = 0; k < c.bodies.size(); ++k) {
        const BodySpec& b = c.bodies[k];
        const std::string where = "body '" + b.name + "'";
        for (std::size_t m = 0; m < k; ++m)
            if (c.bodies[m].name == b.name) throw ConfigError(where + ": duplicate name");
        if (b.shape == BodyShape::mirror) {
            const bool found = std::any_of(c.bodies.begin(), c.bodies.begin() + static_cast<long>(k),
                                           [&](const BodySpec& o) { return o.name == b.source; });
            if (!found) throw ConfigError(where + ": mirror source must be an earlier body");
            continue;
        }
        if (!b.fixed && !b.density && !b.mass) throw ConfigError(where + ": needs density or mass");
        if (b.density && !(*b.density > 0.0)) throw ConfigError(where + ": density must be positive");
        if (b.mass && !(*b.mass > 0.0)) throw ConfigError(where + ": mass must be positive");
        if (b.shape == BodyShape::polygon && b.vertices.size() < 3) throw ConfigError(where + ": needs 3+ vertices");
        if ((b.shape == BodyShape::circle || b.shape == BodyShape::stadium) && !(b.radius > 0.0))
            throw ConfigError(where + ": radius must be positive");
        if (b.shape == BodyShape::circle && b.segments < 3) throw ConfigError(where + ": segments must be >= 3");
        if (b.shape == BodyShape::stadium && b.segments < 1) throw ConfigError(where + ": segments must be >= 1");
        if (b.shape == BodyShape::rectangle && !(b.upper.x > b.lower.x && b.upper.y > b.lower.y))
            throw ConfigError(where + ": empty rectangle");
    }
}

ScenarioConfig parse_config(std::istream& in, const std::string& source) {
    ScenarioConfig c;
    std::string section;
    std::map<std::string, Setter> setters;
    RegionSpec* region = nullptr;
    BodySpec* body = nullptr;

    auto side = [&](SideSpec& s) -> Setter {
        return [&s](const std::string& v, int l) { s.kind = choice(v, kKinds, l); };
    };
    auto inflow = [&](SideSpec& s) -> Setter {
        return [&s](const std::string& v, int l) { s.inflow = primitive(v, l); };
    };

    const std::map<std::string, std::map<std::string, Setter>> fixed_sections{
        {"domain",
         {{"nx", [&](const std::string& v, int l) { c.nx = static_cast<int>(integer(v, l)); }},
          {"ny", [&](const std::string& v, int l) { c.ny = static_cast<int>(integer(v, l)); }},
          {"x0", [&](const std::string& v, int l) { c.x0 = number(v, l); }},
          {"y0", [&](const std::string& v, int l) { c.y0 = number(v, l); }},
          {"x1", [&](const std::string& v, int l) { c.x1 = number(v, l); }},
          {"y1", [&](const std::string& v, int l) { c.y1 = number(v, l); }}}},
        {"gas", {{"gamma", [&](const std::string& v, int l) { c.gamma = number(v, l); }}}},
        {"run",
         {{"name", [&](const std::string& v, int) { c.name = v; }},
          {"cfl", [&](const std::string& v, int l) { c.cfl = number(v, l); }},
          {"end_time", [&](const std::string& v, int l) { c.end_time = number(v, l); }},
          {"max_steps", [&](const std::string& v, int l) { c.max_steps = integer(v, l); }},
          {"scheme", [&](const std::string& v, int) { c.scheme = v; }},
          {"limiter", [&](const std::string& v, int l) { c.limiter = choice(v, kLimiters, l); }},
          {"mixing", [&](const std::string& v, int l) { c.mixing = choice(v, kMixing, l); }}}},
        {"boundary",
         {{"left", side(c.left)},
          {"right", side(c.right)},
          {"bottom", side(c.bottom)},
          {"top", side(c.top)},
          {"left_inflow", inflow(c.left)},
          {"right_inflow", inflow(c.right)},
          {"bottom_inflow", inflow(c.bottom)},
          {"top_inflow", inflow(c.top)},
          {"preset", [&](const std::string& v, int l) { c.preset = choice(v, kPresets, l); }},
          {"preset_wall_x", [&](const std::string& v, int l) { c.preset_wall_x = number(v, l); }},
          {"preset_mach", [&](const std::string& v, int l) { c.preset_mach = number(v, l); }},
          {"preset_ahead", [&](const std::string& v, int l) { c.preset_ahead = primitive(v, l); }}}},
        {"output",
         {{"dir", [&](const std::string& v, int) { c.output_dir = v; }},
          {"snapshot_every", [&](const std::string& v, int l) { c.snapshot_every = static_cast<int>(integer(v, l)); }}}},
    };
    const std::map<std::string, Setter> region_keys{
        {"shape", [&](const std::string& v, int l) { region->shape = choice(v, kRegionShapes, l); }},
        {"x0", [&](const std::string& v, int l) { region->x0 = number(v, l); }},
        {"y0", [&](const std::string& v, int l) { region->y0 = number(v, l); }},
        {"x1", [&](const std::string& v, int l) { region->x1 = number(v, l); }},
        {"y1", [&](const std::string& v, int l) { region->y1 = number(v, l); }},
        {"normal", [&](const std::string& v, int l) { region->normal = vec2(v, l); }},
        {"offset", [&](const std::string& v, int l) { region->offset = number(v, l); }},
        {"state", [&](const std::string& v, int l) { region->state = primitive(v, l); }},
    };
    const std::map<std::string, Setter> body_keys{
        {"name", [&](const std::string& v, int) { body->name = v; }},
        {"shape", [&](const std::string& v, int l) { body->shape = choice(v, kBodyShapes, l); }},
        {"vertices",
         [&](const std::string& v, int l) {
             const auto n = numbers(v, l);
             if (n.size() % 2 != 0) throw ConfigError("vertices: odd number of coordinates", l);
             body->vertices.clear();
             for (std::size_t k = 0; k < n.size(); k += 2) body->vertices.push_back({n[k], n[k + 1]});
         }},
        {"centre", [&](const std::string& v, int l) { body->centre = vec2(v, l); }},
        {"radius", [&](const std::string& v, int l) { body->radius = number(v, l); }},
        {"segments", [&](const std::string& v, int l) { body->segments = static_cast<int>(integer(v, l)); }},
        {"phase", [&](const std::string& v, int l) { body->phase = number(v, l); }},
        {"centre_a", [&](const std::string& v, int l) { body->centre_a = vec2(v, l); }},
        {"centre_b", [&](const std::string& v, int l) { body->centre_b = vec2(v, l); }},
        {"lower", [&](const std::string& v, int l) { body->lower = vec2(v, l); }},
        {"upper", [&](const std::string& v, int l) { body->upper = vec2(v, l); }},
        {"source", [&](const std::string& v, int) { body->source = v; }},
        {"mirror_y", [&](const std::string& v, int l) { body->mirror_y = number(v, l); }},
        {"density", [&](const std::string& v, int l) { body->density = number(v, l); }},
        {"mass", [&](const std::string& v, int l) { body->mass = number(v, l); }},
        {"velocity", [&](const std::string& v, int l) { body->velocity = vec2(v, l); }},
        {"omega", [&](const std::string& v, int l) { body->omega = number(v, l); }},
        {"pivot", [&](const std::string& v, int l) { body->pivot = vec2(v, l); }},
        {"fixed", [&](const std::string& v, int l) { body->fixed = boolean(v, l); }},
        {"lock_rotation", [&](const std::string& v, int l) { body->lock_rotation = boolean(v, l); }},
    };

    const std::map<std::string, Setter>* keys = nullptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header", lineno);
            section = trim(line.substr(1, line.size() - 2));
            if (section == "region") {
                c.regions.emplace_back();
                region = &c.regions.back();
                body = nullptr;
                keys = &region_keys;
            } else if (section == "body") {
                c.bodies.emplace_back();
                body = &c.bodies.back();
                region = nullptr;
                keys = &body_keys;
            } else {
                const auto it = fixed_sections.find(section);
                if (it == fixed_sections.end()) throw ConfigError("unknown section [" + section + "]", lineno);
                keys = &it->second;
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno);
        if (!keys) throw ConfigError("key outside of any section", lineno);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = keys->find(key);
        if (it == keys->end()) throw ConfigError("unknown key '" + key + "' in [" + section + "]", lineno);
        it->second(value, lineno);
    }
    try {
        validate(c);
    } catch (const ConfigError& e) {
        throw ConfigError(source + ": " + e.what());
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    try {
        return parse_config(f, path);
    } catch (const ConfigError& e) {
        if (e.line() > 0) throw ConfigError(path + ":" + std::to_string(e.line()) + ": " + e.what(), 0);
        throw;
    }
}

void save_config(const ScenarioConfig& c, std::ostream& os) {
    const auto old_prec = os.precision(17);
    auto prim = [](const Primitive& q) {
        std::ostringstream s;
        s << std::setprecision(17) << q.rho << ' ' << q.u << ' ' << q.v << ' ' << q.p;
        return s.str();
    };
    auto v2 = [](const Vec2& v) {
        std::ostringstream s;
        s << std::setprecision(17) << v.x << ' ' << v.y;
        return s.str();
    };
    os << "[domain]\nnx = " << c.nx << "\nny = " << c.ny << "\nx0 = " << c.x0 << "\ny0 = " << c.y0
       << "\nx1 = " << c.x1 << "\ny1 = " << c.y1 << "\n\n";
    os << "[gas]\ngamma = " << c.gamma << "\n\n";
    os << "[run]\nname = " << c.name << "\ncfl = " << c.cfl << "\nend_time = " << c.end_time
       << "\nmax_steps = " << c.max_steps << "\nscheme = " << c.scheme << "\nlimiter = " << name_of(c.limiter, kLimiters)
       << "\nmixing = " << name_of(c.mixing, kMixing) << "\n\n";
    os << "[boundary]\n";
    const std::pair<const char*, const SideSpec*> sides[] = {
        {"left", &c.left}, {"right", &c.right}, {"bottom", &c.bottom}, {"top", &c.top}};
    for (const auto& [n, s] : sides) os << n << " = " << name_of(s->kind, kKinds) << '\n';
    for (const auto& [n, s] : sides) os << n << "_inflow = " << prim(s->inflow) << '\n';
    os << "preset = " << name_of(c.preset, kPresets) << "\npreset_wall_x = " << c.preset_wall_x
       << "\npreset_mach = " << c.preset_mach << "\npreset_ahead = " << prim(c.preset_ahead) << "\n\n";
    os << "[output]\ndir = " << c.output_dir << "\nsnapshot_every = " << c.snapshot_every << "\n";
    for (const RegionSpec& r : c.regions) {
        os << "\n[region]\nshape = " << name_of(r.shape, kRegionShapes) << "\nx0 = " << r.x0 << "\ny0 = " << r.y0
           << "\nx1 = " << r.x1 << "\ny1 = " << r.y1 << "\nnormal = " << v2(r.normal) << "\noffset = " << r.offset
           << "\nstate = " << prim(r.state) << '\n';
    }
    for (const BodySpec& b : c.bodies) {
        os << "\n[body]\nname = " << b.name << "\nshape = " << name_of(b.shape, kBodyShapes);
        if (!b.vertices.empty()) {
            os << "\nvertices =";
            for (const Vec2& v : b.vertices) os << ' ' << v2(v);
        }
        os << "\ncentre = " << v2(b.centre) << "\nradius = " << b.radius << "\nsegments = " << b.segments
           << "\nphase = " << b.phase << "\ncentre_a = " << v2(b.centre_a) << "\ncentre_b = " << v2(b.centre_b)
           << "\nlower = " << v2(b.lower) << "\nupper = " << v2(b.upper);
        if (!b.source.empty()) os << "\nsource = " << b.source;
        os << "\nmirror_y = " << b.mirror_y;
        if (b.density) os << "\ndensity = " << *b.density;
        if (b.mass) os << "\nmass = " << *b.mass;
        os << "\nvelocity = " << v2(b.velocity) << "\nomega = " << b.omega;
        if (b.pivot) os << "\npivot = " << v2(*b.pivot);
        os << "\nfixed = " << (b.fixed ? "true" : "false") << "\nlock_rotation = " << (b.lock_rotation ? "true" : "false")
           << '\n';
    }
    os.precision(old_prec);
}

FluxScheme make_scheme(const ScenarioConfig& c) {
    if (c.scheme == "roe") return FluxScheme::roe_first_order();
    return FluxScheme::limited_second_order(c.limiter);
}

DomainBoundary make_boundary(const ScenarioConfig& c) {
    const GasModel gas(c.gamma);
    auto side = [&](const SideSpec& s) {
        SideCondition sc;
        sc.kind = s.kind;
        if (s.kind == BoundaryKind::inflow) sc.inflow = conserved_from_primitive(s.inflow, gas);
        return sc;
    };
    DomainBoundary bc{side(c.left), side(c.right), side(c.bottom), side(c.top)};
    if (c.preset == BoundaryPreset::double_mach) {
        // 60 degree incident shock meeting the wall y = y0 at x = preset_wall_x at t = 0.
        const Primitive ahead = c.preset_ahead;
        Primitive behind = post_shock_state(ahead, c.preset_mach, gas);
        const double un = behind.u;
        behind.u = un * std::sin(std::numbers::pi / 3.0);
        behind.v = -un * std::cos(std::numbers::pi / 3.0);
        const double s = shock_speed(ahead, c.preset_mach, gas);
        const Conserved wa = conserved_from_primitive(ahead, gas);
        const Conserved wb = conserved_from_primitive(behind, gas);
        const double xw = c.preset_wall_x;
        const double height = c.y1 - c.y0;
        bc.bottom.profile = [xw, wb](double x, double) {
            return x < xw ? GhostRule{BoundaryKind::inflow, wb} : GhostRule{BoundaryKind::reflective, {}};
        };
        bc.top.profile = [xw, wa, wb, s, height](double x, double t) {
            const double xs = xw + (height + 2.0 * s * t) / std::sqrt(3.0);
            return GhostRule{BoundaryKind::inflow, x < xs ? wb : wa};
        };
    }
    return bc;
}

CouplingOptions make_options(const ScenarioConfig& c) {
    CouplingOptions o;
    o.scheme = make_scheme(c);
    o.gas = GasModel(c.gamma);
    o.bc = make_boundary(c);
    o.mixing = c.mixing;
    return o;
}

namespace {

Polygon stadium(const Vec2& a, const Vec2& b, double r, int seg) {
    const double th = std::atan2(b.y - a.y, b.x - a.x);
    const double pi = std::numbers::pi;
    Polygon p;
    for (int k = 0; k <= seg; ++k) {
        const double t = th - pi / 2 + pi * k / seg;
        p.push_back({b.x + r * std::cos(t), b.y + r * std::sin(t)});
    }
    for (int k = 0; k <= seg; ++k) {
        const double t = th + pi / 2 + pi * k / seg;
        p.push_back({a.x + r * std::cos(t), a.y + r * std::sin(t)});
    }
    return p;
}

Polygon reference_outline(const BodySpec& b) {
    switch (b.shape) {
        case BodyShape::polygon: return counter_clockwise(b.vertices);
        case BodyShape::circle: return circle_polygon(b.centre, b.radius, b.segments, b.phase);
        case BodyShape::stadium: return stadium(b.centre_a, b.centre_b, b.radius, b.segments);
        case BodyShape::rectangle:
            return {b.lower, {b.upper.x, b.lower.y}, b.upper, {b.lower.x, b.upper.y}};
        case BodyShape::mirror: break;
    }
    throw std::logic_error("reference_outline: mirror bodies are built from their source");
}

}  // namespace

std::vector<BodyState> make_bodies(const ScenarioConfig& c) {
    const Grid grid = c.grid();
    std::vector<BodyState> out;
    std::vector<BodySpec> resolved;
    for (const BodySpec& spec0 : c.bodies) {
        BodySpec spec = spec0;
        Polygon ref;
        if (spec0.shape == BodyShape::mirror) {
            const auto it = std::find_if(resolved.begin(), resolved.end(),
                                         [&](const BodySpec& o) { return o.name == spec0.source; });
            if (it == resolved.end()) throw ConfigError("body '" + spec0.name + "': unknown mirror source");
            const std::size_t src = static_cast<std::size_t>(it - resolved.begin());
            const double m2 = 2.0 * spec0.mirror_y;
            spec = *it;
            spec.name = spec0.name;
            spec.velocity = {it->velocity.x, -it->velocity.y};
            spec.omega = -it->omega;
            if (it->pivot) spec.pivot = Vec2{it->pivot->x, m2 - it->pivot->y};
            const Polygon& sp = out[src].reference;
            ref.resize(sp.size());
            for (std::size_t k = 0; k < sp.size(); ++k) ref[sp.size() - 1 - k] = {sp[k].x, m2 - sp[k].y};
        } else {
            ref = counter_clockwise(reference_outline(spec));
        }
        validate_polygon(ref);
        resolved.push_back(spec);

        BodyState bs;
        bs.name = spec.name;
        bs.reference = ref;
        RigidBody& body = bs.body;
        body.fixed = spec.fixed;
        body.lock_rotation = spec.lock_rotation;
        body.hinged = spec.pivot.has_value();
        const Polygon inside = clip_to_rect(ref, grid.x0, grid.y0, grid.x1(), grid.y1());
        const Polygon& massive = std::abs(signed_area(inside)) > 0.0 ? inside : ref;
        const Vec2 origin = spec.pivot ? *spec.pivot : centroid(massive);
        const double rho_s = spec.density.value_or(1.0);
        MassProperties mp = mass_properties(massive, rho_s, origin);
        double scale = 1.0;
        if (spec.mass) scale = *spec.mass / mp.mass;
        body.mass = mp.mass * scale;
        body.D << mp.jxx * scale, mp.jxy * scale, 0.0,
                  mp.jxy * scale, mp.jyy * scale, 0.0,
                  0.0, 0.0, body.mass / 12.0;
        body.X = body.X0 = Vec3(origin.x, origin.y, 0.0);
        body.V = body.hinged ? Vec3::Zero() : Vec3(spec.velocity.x, spec.velocity.y, 0.0);
        if (!body.lock_rotation && !body.fixed) body.P = spec.omega * hat(Vec3::UnitZ()) * body.Q * body.D;
        if (body.fixed) {
            body.V.setZero();
            body.P.setZero();
        }
        body.validate();
        out.push_back(std::move(bs));
    }
    return out;
}

CutCellField make_field(const ScenarioConfig& c) {
    validate(c);
    const GasModel gas(c.gamma);
    CutCellField f;
    f.grid = c.grid();
    f.w = Array2<Conserved>(c.nx, c.ny);
    for (int j = 0; j < c.ny; ++j) {
        for (int i = 0; i < c.nx; ++i) {
            const Vec2 p{f.grid.xc(i), f.grid.yc(j)};
            Primitive q = c.regions[0].state;
            for (const RegionSpec& r : c.regions)
                if (r.contains(p)) q = r.state;
            f.w(i, j) = conserved_from_primitive(q, gas);
        }
    }
    f.bodies = make_bodies(c);
    f.refresh_geometry();
    return f;
}

}  // namespace ebfsi
