#include "ebfsi/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ebfsi/simulation.hpp"

namespace ebfsi {

ScenarioConfig co_moving_config(int nx, int ny) {
    ScenarioConfig c;
    c.name = "co-moving";
    c.nx = nx;
    c.ny = ny;
    c.x1 = 4.0;
    c.y1 = 1.0;
    c.max_steps = 200;
    c.left = c.right = c.bottom = c.top = {BoundaryKind::periodic, {}};
    const Vec2 vel{0.7, 0.3};
    RegionSpec all;
    all.state = {1.0, vel.x, vel.y, 1.0};
    c.regions = {all};
    BodySpec b;
    b.name = "polygon";
    b.shape = BodyShape::polygon;
    b.vertices = {{0.61, 0.11}, {1.37, 0.19}, {1.52, 0.46}, {1.13, 0.67}, {0.83, 0.59}, {0.70, 0.35}};
    b.density = 3.0;
    b.velocity = vel;
    c.bodies = {b};
    return c;
}

ScenarioConfig free_slip_config(int n) {
    ScenarioConfig c;
    c.name = "free-slip";
    c.nx = c.ny = n;
    c.x1 = c.y1 = 1.0;
    c.max_steps = 200;
    c.left = c.right = c.bottom = c.top = {BoundaryKind::transmissive, {}};
    const double a = std::numbers::pi / 6.0;
    RegionSpec all;
    all.state = {1.0, 0.8 * std::cos(a), 0.8 * std::sin(a), 1.0};
    c.regions = {all};
    // Solid below the line through (0, 0.2) at 30 degrees.
    const double y0 = 0.2;
    BodySpec w;
    w.name = "wall";
    w.shape = BodyShape::polygon;
    w.vertices = {{-0.5, y0 - 0.5 * std::tan(a)}, {-0.5, -1.0}, {1.5, -1.0}, {1.5, y0 + 1.5 * std::tan(a)}};
    w.fixed = true;
    c.bodies = {w};
    return c;
}

ConsistencyResult run_consistency(const ScenarioConfig& cfg, long steps, Execution exec) {
    ScenarioConfig c = cfg;
    c.max_steps = steps;
    c.end_time = 0.0;
    Simulation sim(c);
    sim.options().exec = exec;
    const Array2<Conserved> w0 = sim.field().w;
    std::vector<RigidBody> b0;
    for (const BodyState& b : sim.field().bodies) b0.push_back(b.body);
    ConsistencyResult r;
    sim.run([&](const Simulation& s, const StepReport&) {
        r.fluid_change = std::max(r.fluid_change,
                                  max_primitive_change(w0, s.field().w, s.field().geom.alpha, s.options().gas));
        for (std::size_t k = 0; k < b0.size(); ++k) {
            const RigidBody& b = s.field().bodies[k].body;
            r.velocity_change = std::max(r.velocity_change, (b.V - b0[k].V).cwiseAbs().maxCoeff());
            r.velocity_change = std::max(r.velocity_change, (b.omega() - b0[k].omega()).cwiseAbs().maxCoeff());
        }
    });
    r.steps = sim.field().step;
    const ConservationLedger& led = sim.ledger();
    r.max_mass_residual = led.max_residual(0);
    r.max_balance_residual = std::max({led.max_residual(1), led.max_residual(2), led.max_residual(3)});
    return r;
}

}  // namespace ebfsi
