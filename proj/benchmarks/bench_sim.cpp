#include <benchmark/benchmark.h>

#include <cstddef>

#include "msc/protocol.hpp"
#include "msc/rng.hpp"
#include "msc/scenario.hpp"
#include "msc/sim.hpp"
#include "msc/verify.hpp"

namespace {

void bm_single_rhs(benchmark::State& state) {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-2d.json");
    const msc::MscSystem sys = msc::make_system(sc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.single_rhs(sc.positions0));
    }
}
BENCHMARK(bm_single_rhs);

void bm_integrate_single(benchmark::State& state) {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim1-2d.json");
    const msc::MscSystem sys = msc::make_system(sc);
    msc::IntegratorConfig cfg = sc.integrator;
    cfg.t_end = static_cast<double>(state.range(0));
    cfg.record_every = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::integrate_single(sys, sc.positions0, cfg));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<benchmark::IterationCount>(cfg.t_end / cfg.dt));
}
BENCHMARK(bm_integrate_single)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void bm_integrate_double(benchmark::State& state) {
    const msc::Scenario sc = msc::load_scenario(MSC_SCENARIO_DIR "/sim2-stable.json");
    const msc::MscSystem sys = msc::make_system(sc);
    msc::IntegratorConfig cfg = sc.integrator;
    cfg.t_end = static_cast<double>(state.range(0));
    cfg.record_every = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            msc::integrate_double(sys, sc.positions0, sc.velocities0, sc.alpha, cfg));
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<benchmark::IterationCount>(cfg.t_end / cfg.dt));
}
BENCHMARK(bm_integrate_double)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

void bm_detect_clusters(benchmark::State& state) {
    const std::size_t count = static_cast<std::size_t>(state.range(0));
    msc::SplitMix64 rng(45);
    std::vector<msc::Vec> points;
    points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        points.push_back({rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)});
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::detect_clusters(points, 0.05));
    }
}
BENCHMARK(bm_detect_clusters)->Arg(16)->Arg(128)->Arg(512);

void bm_verification_pass(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::run_verification(7));
    }
}
BENCHMARK(bm_verification_pass)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
