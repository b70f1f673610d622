#include "ebfsi/output.hpp"

#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace ebfsi {

namespace {

Primitive safe_primitive(const Conserved& w, const GasModel& gas) {
    if (!is_admissible(w, gas)) return {w.rho, 0.0, 0.0, 0.0};
    return primitive_from_conserved(w, gas);
}

void write_file(const std::filesystem::path& p, const std::function<void(std::ostream&)>& body, RunSummary& sum) {
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write '" + p.string() + "'");
    body(f);
    if (!f) throw std::runtime_error("write failed for '" + p.string() + "'");
    sum.files.push_back(p.string());
}

}  // namespace

void write_vtk(std::ostream& os, const CutCellField& field, const GasModel& gas) {
    const Grid& g = field.grid;
    os << std::setprecision(9);
    os << "# vtk DataFile Version 3.0\n";
    os << "ebfsi t=" << field.t << " step=" << field.step << "\n";
    os << "ASCII\nDATASET STRUCTURED_POINTS\n";
    os << "DIMENSIONS " << g.nx + 1 << ' ' << g.ny + 1 << " 1\n";
    os << "ORIGIN " << g.x0 << ' ' << g.y0 << " 0\n";
    os << "SPACING " << g.dx << ' ' << g.dy << " 1\n";
    os << "CELL_DATA " << g.cells() << '\n';
    std::vector<Primitive> q(static_cast<std::size_t>(g.cells()));
    for (long c = 0; c < g.cells(); ++c) q[c] = safe_primitive(field.w[c], gas);
    auto scalar = [&](const char* name, auto get) {
        os << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (long c = 0; c < g.cells(); ++c) os << get(c) << '\n';
    };
    scalar("rho", [&](long c) { return q[c].rho; });
    scalar("u", [&](long c) { return q[c].u; });
    scalar("v", [&](long c) { return q[c].v; });
    scalar("p", [&](long c) { return q[c].p; });
    scalar("alpha", [&](long c) { return field.geom.alpha[c]; });
}

void write_field_csv(std::ostream& os, const CutCellField& field, const GasModel& gas) {
    const Grid& g = field.grid;
    os << std::setprecision(17);
    os << "i,j,x,y,alpha,rho,u,v,p\n";
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const Primitive q = safe_primitive(field.w(i, j), gas);
            os << i << ',' << j << ',' << g.xc(i) << ',' << g.yc(j) << ',' << field.geom.alpha(i, j) << ',' << q.rho
               << ',' << q.u << ',' << q.v << ',' << q.p << '\n';
        }
    }
}

void write_trajectory_csv(std::ostream& os, const std::vector<std::string>& names,
                          const std::vector<std::vector<BodySample>>& traj) {
    os << std::setprecision(17);
    os << "body,t,x,y,theta,vx,vy,omega\n";
    for (std::size_t b = 0; b < traj.size(); ++b)
        for (const BodySample& s : traj[b])
            os << names[b] << ',' << s.t << ',' << s.x << ',' << s.y << ',' << s.theta << ',' << s.vx << ',' << s.vy
               << ',' << s.omega << '\n';
}

RunSummary run_scenario(const ScenarioConfig& cfg, const std::string& out_dir, std::ostream* log) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    fs::create_directories(dir);
    Simulation sim(cfg);
    const GasModel gas = sim.options().gas;
    RunSummary sum;
    auto snapshot = [&](const Simulation& s) {
        std::ostringstream stem;
        stem << "field_" << std::setw(6) << std::setfill('0') << s.field().step;
        write_file(dir / (stem.str() + ".vtk"), [&](std::ostream& os) { write_vtk(os, s.field(), gas); }, sum);
        write_file(dir / (stem.str() + ".csv"), [&](std::ostream& os) { write_field_csv(os, s.field(), gas); }, sum);
    };
    {
        std::ofstream f(dir / "config.ini");
        save_config(cfg, f);
    }
    if (cfg.snapshot_every > 0) snapshot(sim);
    sim.run([&](const Simulation& s, const StepReport& rep) {
        if (log && (rep.step % 100 == 0)) *log << "step " << rep.step << "  t = " << rep.t + rep.dt << '\n';
        if (cfg.snapshot_every > 0 && s.field().step % cfg.snapshot_every == 0 && !s.finished()) snapshot(s);
    });
    snapshot(sim);
    write_file(dir / "ledger.csv", [&](std::ostream& os) { sim.ledger().write_csv(os); }, sum);
    std::vector<std::string> names;
    for (const BodyState& b : sim.field().bodies) names.push_back(b.name);
    write_file(dir / "trajectory.csv", [&](std::ostream& os) { write_trajectory_csv(os, names, sim.trajectories()); },
               sum);
    sum.steps = sim.field().step;
    sum.t = sim.field().t;
    return sum;
}

}  // namespace ebfsi
