#include <rmap/gallery.hpp>
#include <rmap/verifier.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_Suite(benchmark::State& state, const char* name) {
    auto manifest = rmap::builtin_scenario(name);
    manifest.sampling.count = static_cast<std::size_t>(state.range(0));
    const auto scenario = rmap::build_scenario(manifest);
    const auto options = rmap::suite_options(manifest);
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmap::run_suite(scenario, options));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK_CAPTURE(BM_Suite, paper_example, "paper_example")->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Suite, graph_with_kernel, "graph_with_kernel")->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
