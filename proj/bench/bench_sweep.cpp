// Split 2D step on a Sod-like field: serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "ebfsi/config.hpp"
#include "ebfsi/sweep.hpp"

namespace {

ebfsi::ScenarioConfig blast(int n) {
    ebfsi::ScenarioConfig c;
    c.nx = c.ny = n;
    c.max_steps = 1;
    c.left = c.right = c.bottom = c.top = {ebfsi::BoundaryKind::transmissive, {}};
    ebfsi::RegionSpec all, hot;
    hot.shape = ebfsi::RegionShape::box;
    hot.x0 = hot.y0 = 0.3;
    hot.x1 = hot.y1 = 0.6;
    hot.state = {1.0, 0.0, 0.0, 10.0};
    all.state = {0.125, 0.0, 0.0, 0.1};
    c.regions = {all, hot};
    return c;
}

void run(benchmark::State& state, ebfsi::Execution exec) {
    const ebfsi::ScenarioConfig cfg = blast(static_cast<int>(state.range(0)));
    const ebfsi::CutCellField f = ebfsi::make_field(cfg);
    const ebfsi::FluxScheme scheme = ebfsi::make_scheme(cfg);
    const ebfsi::DomainBoundary bc = ebfsi::make_boundary(cfg);
    const ebfsi::GasModel gas(cfg.gamma);
    const double dt = 0.2 * f.grid.dx;
    for (auto _ : state) {
        auto r = ebfsi::strang_step_2d(f.w, f.grid, dt, 0.0, scheme, gas, bc, ebfsi::SweepOrder::xy, exec);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * f.grid.cells());
}

void BM_StrangSerial(benchmark::State& s) { run(s, ebfsi::Execution::serial); }
void BM_StrangParallel(benchmark::State& s) { run(s, ebfsi::Execution::parallel); }

}  // namespace

BENCHMARK(BM_StrangSerial)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StrangParallel)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
