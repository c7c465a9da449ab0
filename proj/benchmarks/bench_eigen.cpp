#include <benchmark/benchmark.h>

#include <cstddef>

#include "msc/eigen.hpp"
#include "msc/graph.hpp"
#include "msc/matrix.hpp"
#include "msc/protocol.hpp"
#include "msc/rng.hpp"
#include "msc/scaling.hpp"

namespace {

msc::Matrix random_dense(std::size_t n, msc::SplitMix64& rng) {
    msc::Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform(-1.0, 1.0);
    return m;
}

msc::MscSystem mixed_rotation_system() {
    std::vector<msc::Matrix> raw;
    for (int i = 0; i < 6; ++i) raw.push_back(msc::rotation2(0.0));
    for (int i = 0; i < 5; ++i) raw.push_back(msc::rotation2(2.0 * 3.14159265358979323846 / 3.0));
    for (int i = 0; i < 5; ++i) raw.push_back(msc::rotation2(4.0 * 3.14159265358979323846 / 3.0));
    return msc::MscSystem::assemble(msc::benchmark_graph_16(), msc::ScalingSet::classify(raw));
}

void bm_dense_eigenvalues(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    msc::SplitMix64 rng(42);
    const msc::Matrix m = random_dense(n, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::eigenvalues(m));
    }
    state.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}
BENCHMARK(bm_dense_eigenvalues)->Arg(8)->Arg(16)->Arg(32)->Arg(48)->Complexity();

void bm_symmetric_eigenvalues(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    msc::SplitMix64 rng(43);
    msc::Matrix m = random_dense(n, rng);
    // Jacobi path; symmetrized internally.
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::symmetric_eigenvalues(m));
    }
}
BENCHMARK(bm_symmetric_eigenvalues)->Arg(8)->Arg(16)->Arg(32);

void bm_spectral_report(benchmark::State& state) {
    const msc::MscSystem sys = mixed_rotation_system();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.spectral_report());
    }
}
BENCHMARK(bm_spectral_report);

void bm_hurwitz_predicate(benchmark::State& state) {
    msc::SplitMix64 rng(44);
    for (auto _ : state) {
        benchmark::DoNotOptimize(msc::hurwitz_complex_quadratic(
            rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0),
            rng.uniform(-3.0, 3.0)));
    }
}
BENCHMARK(bm_hurwitz_predicate);

}  // namespace

BENCHMARK_MAIN();
