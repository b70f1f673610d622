#include "ebfsi/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ebfsi {

namespace {

std::string tagged(const std::string& what, long step, double t) {
    std::ostringstream os;
    os << "step " << step << ", t = " << t << ": " << what;
    return os.str();
}

}  // namespace

double max_surface_speed(const BodyState& b) {
    const RigidBody& rb = b.body;
    if (rb.fixed) return 0.0;
    const double w = rb.omega().z();
    double s = 0.0;
    for (const Vec2& x0 : b.reference) {
        const Vec2 x = rb.to_world(x0);
        const double rx = x.x - rb.X.x(), ry = x.y - rb.X.y();
        s = std::max(s, std::hypot(rb.V.x() - w * ry, rb.V.y() + w * rx));
    }
    return s;
}

SimulationError::SimulationError(const std::string& what, long step, double t)
    : std::runtime_error(tagged(what, step, t)), step_(step), t_(t) {}

Simulation::Simulation(const ScenarioConfig& cfg)
    : cfg_(cfg), opt_(make_options(cfg)), field_(make_field(cfg)), ledger_(fluid_totals(field_)) {
    traj_.resize(field_.bodies.size());
    sample_bodies();
}

bool Simulation::finished() const {
    if (cfg_.max_steps >= 0 && field_.step >= cfg_.max_steps) return true;
    if (cfg_.end_time > 0.0 && field_.t >= cfg_.end_time) return true;
    return cfg_.end_time <= 0.0 && cfg_.max_steps < 0;
}

double Simulation::next_dt() const {
    double dt = stable_dt(field_.w, field_.grid, opt_.gas, cfg_.cfl, &field_.geom.alpha);
    // A boundary face may not cross more than a CFL fraction of a cell.
    const double h = std::min(field_.grid.dx, field_.grid.dy);
    for (const BodyState& b : field_.bodies) {
        const double s = max_surface_speed(b);
        if (s > 0.0) dt = std::min(dt, cfg_.cfl * h / s);
    }
    if (cfg_.end_time > 0.0) dt = std::min(dt, cfg_.end_time - field_.t);
    return dt;
}

StepReport Simulation::step() {
    double dt = 0.0;
    try {
        dt = next_dt();
    } catch (const std::exception& e) {
        throw SimulationError(e.what(), field_.step, field_.t);
    }
    return step(dt);
}

StepReport Simulation::step(double dt) {
    StepReport rep;
    try {
        rep = coupled_step(field_, dt, opt_);
    } catch (const std::exception& e) {
        throw SimulationError(e.what(), field_.step, field_.t);
    }
    ledger_.record(rep, solid_kinetic_energy());
    sample_bodies();
    return rep;
}

void Simulation::run(const std::function<void(const Simulation&, const StepReport&)>& observer) {
    while (!finished()) {
        const StepReport rep = step();
        if (observer) observer(*this, rep);
    }
}

double Simulation::solid_kinetic_energy() const {
    double e = 0.0;
    for (const BodyState& b : field_.bodies) e += b.body.kinetic_energy();
    return e;
}

void Simulation::sample_bodies() {
    for (std::size_t b = 0; b < field_.bodies.size(); ++b) {
        const RigidBody& rb = field_.bodies[b].body;
        BodySample s;
        s.t = field_.t;
        s.x = rb.X.x();
        s.y = rb.X.y();
        s.theta = rb.angle();
        if (!traj_[b].empty()) {
            const double prev = traj_[b].back().theta;
            const double two_pi = 2.0 * std::numbers::pi;
            s.theta += two_pi * std::round((prev - s.theta) / two_pi);
        }
        s.vx = rb.V.x();
        s.vy = rb.V.y();
        s.omega = rb.omega().z();
        traj_[b].push_back(s);
    }
}

}  // namespace ebfsi
