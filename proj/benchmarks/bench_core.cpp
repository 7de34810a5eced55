#include "epg/grammar.hpp"
#include "epg/optimizer.hpp"
#include "epg/partition.hpp"
#include "epg/patterns.hpp"
#include "epg/pipeline.hpp"

#include <benchmark/benchmark.h>

using namespace epg;

namespace {

Dataset spiral(std::size_t n)
{
	PatternSpec spec;
	spec.n_points = n;
	spec.noise_fraction = 0.1;
	spec.jitter = 0.03;
	spec.seed = 1;
	return generate_pattern(spec);
}

// A path of `nodes` nodes grown on the spiral, used as a warm start.
GraphState grown(const Dataset& d, std::size_t nodes)
{
	EpochSpec e;
	e.max_nodes = nodes;
	const auto r = run_epochs(d, {e}, PrincipalSegment{});
	return {r.front().graph, r.front().embedding};
}

void partition(benchmark::State& state)
{
	const Dataset d = spiral(static_cast<std::size_t>(state.range(0)));
	const GraphState s = grown(d, 20);
	for (auto _ : state)
		benchmark::DoNotOptimize(build_partition(d, s.embedding, 0.06));
	state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(partition)->Arg(1000)->Arg(10000);

void fit_robust(benchmark::State& state)
{
	const Dataset d = spiral(static_cast<std::size_t>(state.range(0)));
	const GraphState s = grown(d, 30);
	OptimizerConfig c;
	c.mode = Mode::robust;
	c.r0 = 0.06;
	for (auto _ : state)
		benchmark::DoNotOptimize(fit(s.graph, d, s.embedding, c));
}
BENCHMARK(fit_robust)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void grow_spiral(benchmark::State& state)
{
	const Dataset d = spiral(1000);
	EpochSpec e;
	e.mode = Mode::robust;
	e.r0 = 0.06;
	e.max_nodes = static_cast<std::size_t>(state.range(0));
	for (auto _ : state)
		benchmark::DoNotOptimize(run_epochs(d, {e}, LocalNeighborhood{}, static_cast<unsigned>(state.range(1))));
}
BENCHMARK(grow_spiral)->Args({15, 1})->Args({15, 4})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
