#include <benchmark/benchmark.h>

#include "dynbench/experiments.hpp"
#include "dynbench/hier_engine.hpp"
#include "dynbench/measures.hpp"
#include "dynbench/path_engine.hpp"
#include "dynbench/witnesses.hpp"

using namespace dynbench;

namespace {

Instance bench_instance(std::size_t d) {
    GeneratorSpec g;
    g.dimension = d;
    g.underlying = GeneratorSpec::Shape::Random;
    g.seed = 11;
    return generate_instance(g);
}

void BM_PathRun(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Minimizer m(MinimizerSpec::random(0.1, 3));
        benchmark::DoNotOptimize(run_path(inst, m, PathConfig{20, {}, {}}));
    }
}
BENCHMARK(BM_PathRun)->Arg(12)->Arg(64)->Arg(512);

void BM_HierRun(benchmark::State& state) {
    const auto inst = bench_instance(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        Minimizer m(MinimizerSpec::random(0.1, 3));
        benchmark::DoNotOptimize(run_hier(inst, m, HierConfig{2, 3, {}, {}}));
    }
}
BENCHMARK(BM_HierRun)->Arg(12)->Arg(64);

void BM_DistanceByPairs(benchmark::State& state) {
    const auto d = static_cast<std::size_t>(state.range(0));
    const auto cls = HypothesisClass::complete(d);
    Rng rng(5);
    const DiscreteDistribution p(rng.simplex(d));
    const DiscreteDistribution q(rng.simplex(d));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hdh_distance_by_pairs(p, q, cls));
    }
}
BENCHMARK(BM_DistanceByPairs)->DenseRange(4, 8, 2);

void BM_PathWitness(benchmark::State& state) {
    for (auto _ : state) {
        auto w = build_path_witness(0.1, 30);
        Minimizer m(w.minimizer);
        const auto trace = run_path(w.instance, m, PathConfig{30, {}, {}});
        benchmark::DoNotOptimize(verify_witness(w, trace));
    }
}
BENCHMARK(BM_PathWitness)->Unit(benchmark::kMillisecond);

void BM_HierWitness(benchmark::State& state) {
    for (auto _ : state) {
        auto w = build_hier_witness(0.5, 16);
        Minimizer m(w.minimizer);
        const auto trace = run_hier(w.instance, m, HierConfig{2, 3, {}, {}});
        benchmark::DoNotOptimize(verify_witness(w, trace));
    }
}
BENCHMARK(BM_HierWitness);

}  // namespace

BENCHMARK_MAIN();
