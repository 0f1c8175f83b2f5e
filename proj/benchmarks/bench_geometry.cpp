#include <rmap/gallery.hpp>
#include <rmap/map_calculus.hpp>

#include <benchmark/benchmark.h>

namespace {

rmap::Vector sample_point(std::size_t n) {
    rmap::Vector p(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        p(i) = 0.1 * static_cast<double>(i + 1) - 0.2;
    }
    return p;
}

void BM_GeometryAt(benchmark::State& state) {
    const auto m = rmap::builtin_scenario("graph_with_kernel");
    const rmap::ChartManifold source(m.source);
    const auto p = sample_point(source.dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmap::geometry_at(source, p));
    }
}
BENCHMARK(BM_GeometryAt);

void BM_EvaluateMapPoint(benchmark::State& state) {
    const auto scenario = rmap::build_scenario(rmap::builtin_scenario("graph_with_kernel"));
    const auto p = sample_point(scenario.map.source().dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmap::evaluate_map_point(scenario.map, p));
    }
}
BENCHMARK(BM_EvaluateMapPoint);

void BM_KernelInvolutivity(benchmark::State& state) {
    const auto scenario = rmap::build_scenario(rmap::builtin_scenario("graph_with_kernel"));
    const auto p = sample_point(scenario.map.source().dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmap::kernel_involutivity_defect_at(scenario.map, p));
    }
}
BENCHMARK(BM_KernelInvolutivity);

}  // namespace
