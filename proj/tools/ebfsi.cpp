// Command-line front end: run configs, benchmarks, convergence studies and
// the uniform-flow consistency checks.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

#include "ebfsi/config.hpp"
#include "ebfsi/consistency.hpp"
#include "ebfsi/convergence.hpp"
#include "ebfsi/output.hpp"
#include "ebfsi/scenarios.hpp"

namespace {

int run_config(const std::string& path, const std::string& out) {
    const ebfsi::ScenarioConfig cfg = ebfsi::load_config(path);
    const std::string dir = out.empty() ? cfg.output_dir : out;
    const auto sum = ebfsi::run_scenario(cfg, dir, &std::cout);
    std::cout << cfg.name << ": " << sum.steps << " steps, t = " << sum.t << ", output in " << dir << '\n';
    return 0;
}

int run_bench(const std::string& name, int resolution, const std::string& scheme, const std::string& mixing,
              const std::string& out) {
    ebfsi::ScenarioConfig cfg = ebfsi::build_named(name, resolution);
    cfg.scheme = scheme;
    cfg.mixing = mixing == "alpha" ? ebfsi::MixingWeights::solid_fraction : ebfsi::MixingWeights::fluid_fraction;
    ebfsi::validate(cfg);
    const std::string dir = out.empty() ? "output/" + name : out;
    const auto sum = ebfsi::run_scenario(cfg, dir, &std::cout);
    std::cout << name << ": " << sum.steps << " steps, t = " << sum.t << ", output in " << dir << '\n';
    return 0;
}

int run_check() {
    std::cout << std::scientific << std::setprecision(3);
    bool ok = true;
    auto report = [&](const char* name, const ebfsi::ConsistencyResult& r) {
        const bool pass = r.fluid_change <= 1e-12 && r.velocity_change <= 1e-12;
        ok = ok && pass;
        std::cout << (pass ? "PASS " : "FAIL ") << name << ": " << r.steps << " steps, fluid change " << r.fluid_change
                  << ", body velocity change " << r.velocity_change << ", mass residual " << r.max_mass_residual
                  << '\n';
    };
    report("co-moving polygon", ebfsi::run_consistency(ebfsi::co_moving_config(256, 64), 200));
    report("free slip 30 deg", ebfsi::run_consistency(ebfsi::free_slip_config(256), 200));
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cut-cell Euler solver coupled to rigid bodies"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run a scenario from a config file");
    run->add_option("config", config_path, "Config file")->required()->check(CLI::ExistingFile);
    run->add_option("--out", out_dir, "Output directory (overrides [output] dir)");

    std::string bench_name, scheme = "mp2", mixing = "beta", bench_out;
    int resolution = 0;
    auto* bench = app.add_subcommand("bench", "Run a built-in benchmark");
    bench->add_option("name", bench_name, "Benchmark name")
        ->required()
        ->check(CLI::IsMember(ebfsi::scenario_names()));
    bench->add_option("--resolution", resolution, "Cells along x (default depends on the benchmark)");
    bench->add_option("--scheme", scheme, "Flux scheme")->check(CLI::IsMember({"roe", "mp2"}));
    bench->add_option("--mixing", mixing, "Mixing weights")->check(CLI::IsMember({"beta", "alpha"}));
    bench->add_option("--out", bench_out, "Output directory");

    std::string family;
    std::vector<int> levels;
    auto* conv = app.add_subcommand("converge", "Grid convergence study");
    conv->add_option("family", family, "piston | sod | lift-off")
        ->required()
        ->check(CLI::IsMember({"piston", "sod", "lift-off"}));
    conv->add_option("--levels", levels, "Resolutions (piston: finest is the reference)")
        ->delimiter(',')
        ->required();

    auto* check = app.add_subcommand("check", "Uniform-flow consistency checks");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run) return run_config(config_path, out_dir);
        if (*bench) return run_bench(bench_name, resolution, scheme, mixing, bench_out);
        if (*conv) {
            ebfsi::run_convergence_suite(family, levels).print(std::cout);
            return 0;
        }
        if (*check) return run_check();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
