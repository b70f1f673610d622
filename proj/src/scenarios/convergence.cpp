#include "ebfsi/convergence.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "ebfsi/riemann.hpp"
#include "ebfsi/scenarios.hpp"

namespace ebfsi {

double ConvergenceReport::order(const std::string& name) const {
    for (const auto& [n, v] : orders)
        if (n == name) return v;
    throw std::out_of_range("no order named '" + name + "'");
}

void ConvergenceReport::print(std::ostream& os) const {
    const auto flags = os.flags();
    os << family << " convergence\n";
    os << std::setw(8) << "N" << std::setw(14) << "h";
    for (const auto& c : columns) os << std::setw(18) << c;
    os << '\n';
    os << std::scientific << std::setprecision(6);
    for (const auto& r : rows) {
        os << std::setw(8) << r.resolution << std::setw(14) << r.h;
        for (double v : r.values) os << std::setw(18) << v;
        os << '\n';
    }
    os.flags(flags);
    for (const auto& [n, v] : orders) os << "order(" << n << ") = " << std::fixed << std::setprecision(3) << v << '\n';
    os.flags(flags);
    os << "elapsed " << std::fixed << std::setprecision(1) << seconds << " s\n";
    os.flags(flags);
}

double hermite_position(const std::vector<BodySample>& traj, double t, bool y_component) {
    if (traj.empty()) throw std::invalid_argument("hermite_position: empty trajectory");
    auto pos = [&](const BodySample& s) { return y_component ? s.y : s.x; };
    auto vel = [&](const BodySample& s) { return y_component ? s.vy : s.vx; };
    if (t <= traj.front().t) return pos(traj.front());
    if (t >= traj.back().t) return pos(traj.back());
    const auto it = std::upper_bound(traj.begin(), traj.end(), t, [](double a, const BodySample& s) { return a < s.t; });
    const BodySample& b = *it;
    const BodySample& a = *(it - 1);
    const double h = b.t - a.t;
    const double s = (t - a.t) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
    return h00 * pos(a) + h10 * h * vel(a) + h01 * pos(b) + h11 * h * vel(b);
}

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void add_orders(ConvergenceReport& rep) {
    std::vector<double> h;
    for (const auto& r : rep.rows) h.push_back(r.h);
    for (std::size_t c = 0; c < rep.columns.size(); ++c) {
        std::vector<double> e;
        for (const auto& r : rep.rows) e.push_back(r.values[c]);
        rep.orders.emplace_back(rep.columns[c], convergence_order(e, h));
    }
}

}  // namespace

ConvergenceReport piston_convergence(const std::vector<int>& levels, int reference) {
    const double t0 = now_seconds();
    if (levels.size() < 3) throw std::invalid_argument("piston_convergence: need at least 3 levels");
    Simulation ref(build_piston_1d(reference));
    ref.run();
    const auto& ref_traj = ref.trajectories()[0];
    const GasModel gas = ref.options().gas;

    ConvergenceReport rep;
    rep.family = "piston";
    rep.columns = {"position_linf", "pressure_l1"};
    for (int n : levels) {
        if (reference % n != 0 || n >= reference)
            throw std::invalid_argument("piston_convergence: reference must be a multiple of every level");
        const int r = reference / n;
        Simulation sim(build_piston_1d(n));
        sim.run();
        double pos = 0.0;
        for (const BodySample& s : sim.trajectories()[0])
            pos = std::max(pos, std::abs(s.x - hermite_position(ref_traj, s.t)));
        const CutCellField& f = sim.field();
        const CutCellField& g = ref.field();
        double l1 = 0.0;
        for (int i = 0; i < n; ++i) {
            if (f.geom.alpha(i, 0) != 0.0) continue;
            double sum = 0.0;
            bool fluid = true;
            for (int k = 0; k < r; ++k) {
                if (g.geom.alpha(i * r + k, 0) != 0.0) fluid = false;
                sum += pressure(g.w(i * r + k, 0), gas);
            }
            if (!fluid) continue;
            l1 += std::abs(pressure(f.w(i, 0), gas) - sum / r) * f.grid.dx;
        }
        rep.rows.push_back({n, f.grid.dx, {pos, l1}});
    }
    add_orders(rep);
    rep.seconds = now_seconds() - t0;
    return rep;
}

ConvergenceReport sod_convergence(const std::vector<int>& levels) {
    const double t0 = now_seconds();
    if (levels.size() < 3) throw std::invalid_argument("sod_convergence: need at least 3 levels");
    const GasModel gas(1.4);
    const Primitive L{1.0, 0.0, 0.0, 1.0}, R{0.125, 0.0, 0.0, 0.1};
    ConvergenceReport rep;
    rep.family = "sod";
    rep.columns = {"density_l1"};
    for (int n : levels) {
        Simulation sim(build_sod(n));
        sim.run();
        const CutCellField& f = sim.field();
        double l1 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double xi = (f.grid.xc(i) - 0.5) / f.t;
            l1 += std::abs(f.w(i, 0).rho - exact_riemann_solution(L, R, gas, xi).rho) * f.grid.dx;
        }
        rep.rows.push_back({n, f.grid.dx, {l1}});
    }
    add_orders(rep);
    rep.seconds = now_seconds() - t0;
    return rep;
}

ConvergenceReport lift_off_convergence(const std::vector<int>& levels) {
    const double t0 = now_seconds();
    if (levels.size() < 3) throw std::invalid_argument("lift_off_convergence: need at least 3 levels");
    ConvergenceReport rep;
    rep.family = "lift-off";
    rep.columns = {"x", "y", "cauchy_distance"};
    double px = 0.0, py = 0.0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        Simulation sim(build_lift_off(levels[k]));
        sim.run();
        const RigidBody& b = sim.field().bodies[0].body;
        const double x = b.X.x(), y = b.X.y();
        const double d = k == 0 ? 0.0 : std::hypot(x - px, y - py);
        rep.rows.push_back({levels[k], sim.field().grid.dx, {x, y, d}});
        px = x;
        py = y;
    }
    if (levels.size() >= 3) {
        const std::size_t m = rep.rows.size();
        const double d1 = rep.rows[m - 2].values[2], d2 = rep.rows[m - 1].values[2];
        const double ratio = rep.rows[m - 2].h / rep.rows[m - 1].h;
        if (d1 > 0.0 && d2 > 0.0) rep.orders.emplace_back("cauchy", std::log(d1 / d2) / std::log(ratio));
    }
    rep.seconds = now_seconds() - t0;
    return rep;
}

ConvergenceReport run_convergence_suite(const std::string& family, std::vector<int> levels) {
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    if (family == "piston") {
        if (levels.size() < 4) throw std::invalid_argument("piston: need 3 levels plus a reference");
        const int reference = levels.back();
        levels.pop_back();
        return piston_convergence(levels, reference);
    }
    if (family == "sod") return sod_convergence(levels);
    if (family == "lift-off") return lift_off_convergence(levels);
    throw std::invalid_argument("unknown convergence family '" + family + "'");
}

}  // namespace ebfsi
