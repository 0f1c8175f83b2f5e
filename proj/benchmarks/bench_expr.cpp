#include <rmap/expr.hpp>

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

const std::vector<std::string> kCoords = {"x", "y", "u", "v"};
const char* kText = "(1 + 4*(x^2 + y^2)) * exp(-u^2) + sin(x*y) / (2 + cos(v))";

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(rmap::expr::parse(kText, kCoords));
    }
}
BENCHMARK(BM_Parse);

void BM_EvalValue(benchmark::State& state) {
    const auto e = rmap::expr::parse(kText, kCoords);
    const std::vector<double> p = {0.3, -0.2, 0.5, 0.1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.value(p));
    }
}
BENCHMARK(BM_EvalValue);

void BM_EvalJet(benchmark::State& state) {
    const auto e = rmap::expr::parse(kText, kCoords);
    const std::vector<double> p = {0.3, -0.2, 0.5, 0.1};
    const auto mode = state.range(0) == 0 ? rmap::DerivativeMode::Jets : rmap::DerivativeMode::FiniteDifferences;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.jet(p, mode));
    }
}
BENCHMARK(BM_EvalJet)->Arg(0)->Arg(1);

}  // namespace
