#include "hypermatch/absorption.hpp"
#include "hypermatch/fractional.hpp"
#include "hypermatch/instances.hpp"
#include "hypermatch/lattice.hpp"
#include "hypermatch/pipeline.hpp"
#include "hypermatch/reachability.hpp"

#include <benchmark/benchmark.h>

using namespace hypermatch;

namespace {

Hypergraph dense(int n) { return random_kgraph(n, 3, Rational(9, 10), 11); }

}  // namespace

static void BM_Oracle(benchmark::State& state)
{
    const Hypergraph h = dense(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(perfect_matching_oracle(h));
}
BENCHMARK(BM_Oracle)->Arg(9)->Arg(12)->Arg(15)->Arg(18);

static void BM_OracleSpaceBarrier(benchmark::State& state)
{
    // No perfect matching: the search has to exhaust the tree.
    const Hypergraph h = space_barrier(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(perfect_matching_oracle(h));
}
BENCHMARK(BM_OracleSpaceBarrier)->Arg(9)->Arg(12)->Arg(15);

static void BM_FractionalLp(benchmark::State& state)
{
    const Hypergraph h = Hypergraph::complete(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(max_fractional_matching(h));
}
BENCHMARK(BM_FractionalLp)->Arg(6)->Arg(9)->Arg(12);

static void BM_ReachabilityTable(benchmark::State& state)
{
    const Hypergraph h = dense(static_cast<int>(state.range(0)));
    const VertexSet all = iota_set(0, h.n());
    for (auto _ : state) benchmark::DoNotOptimize(ReachabilityTable(h, all, {Rational(1, 100), 1}));
}
BENCHMARK(BM_ReachabilityTable)->Arg(9)->Arg(12)->Arg(15);

static void BM_BuildPartition(benchmark::State& state)
{
    const Hypergraph h = space_barrier(static_cast<int>(state.range(0)), 3);
    const PipelineParams p = default_params(3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(build_partition(h, p));
}
BENCHMARK(BM_BuildPartition)->Arg(9)->Arg(12)->Arg(15);

static void BM_CosetGroup(benchmark::State& state)
{
    const int r = static_cast<int>(state.range(0));
    std::vector<IndexVector> gens;
    for (int i = 0; i < r; ++i) {
        IndexVector v(r, 0);
        v[i] = 3;
        gens.push_back(v);
        IndexVector w(r, 0);
        w[i] = 1;
        w[(i + 1) % r] += 2;
        gens.push_back(w);
    }
    const Lattice l(r, gens);
    for (auto _ : state) benchmark::DoNotOptimize(CosetGroup(l, 3));
}
BENCHMARK(BM_CosetGroup)->Arg(2)->Arg(4)->Arg(6);

static void BM_AbsorbingFamily(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    const Hypergraph h = Hypergraph::complete(n, 3);
    Partition part;
    part.parts = {{}, iota_set(0, n)};
    PipelineParams p = default_params(3, 2);
    p.beta = Rational(1, 4);
    for (auto _ : state) benchmark::DoNotOptimize(build_absorbing_family(h, part, p));
}
BENCHMARK(BM_AbsorbingFamily)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_Decide(benchmark::State& state)
{
    const Hypergraph h = dense(static_cast<int>(state.range(0)));
    const PipelineParams p = default_params(3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(decide(h, 2, p));
}
BENCHMARK(BM_Decide)->Arg(9)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

static void BM_DecideSpaceBarrier(benchmark::State& state)
{
    const Hypergraph h = space_barrier(static_cast<int>(state.range(0)), 3);
    const PipelineParams p = default_params(3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(decide(h, 2, p));
}
BENCHMARK(BM_DecideSpaceBarrier)->Arg(9)->Arg(12)->Arg(15)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
