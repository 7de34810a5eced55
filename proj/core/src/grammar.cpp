#include "epg/grammar.hpp"

#include "epg/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

namespace epg {

std::string describe(const GrammarOp& op)
{
	if (const auto* add = std::get_if<AddNodeToNode>(&op))
		return "add_node(" + to_string(add->target) + ")";
	const auto& bisect = std::get<BisectEdge>(op);
	return "bisect_edge(" + to_string(bisect.a) + "," + to_string(bisect.b) + ")";
}

void GrowthConfig::validate() const
{
	if (max_nodes < 1)
		throw DataError("max_nodes must be positive");
	if (trial_iterations < 1)
		throw DataError("trial_iterations must be positive");
	if (std::isnan(min_energy_improvement) || min_energy_improvement < 0.0)
		throw DataError("min_energy_improvement must be non-negative");
	optimizer.validate();
}

GraphState apply_add_node(const ElasticGraph& graph, const Embedding& embedding, NodeId target,
                          const Dataset& dataset, const Partition& partition)
{
	if (!graph.contains(target))
		throw DataError("cannot add a node to unknown node " + to_string(target));
	embedding.require_matches(graph);
	require_consistent(dataset, embedding, partition);

	const Eigen::MatrixXd& x = dataset.points();
	const Eigen::VectorXd& w = dataset.weights();
	Eigen::VectorXd sum = Eigen::VectorXd::Zero(x.cols());
	double weight = 0.0;
	for (std::size_t i = 0; i < partition.size(); ++i) {
		if (partition.owner[i] != target || !partition.close[i])
			continue;
		const auto ii = static_cast<Eigen::Index>(i);
		sum += w[ii] * x.row(ii).transpose();
		weight += w[ii];
	}

	const Eigen::VectorXd anchor = embedding.position(target);
	Eigen::VectorXd placement;
	if (weight > 0.0) {
		placement = sum / weight;
	} else if (!graph.neighbors(target).empty()) {
		placement = 2.0 * anchor - embedding.position(graph.neighbors(target).front());
	} else {
		placement = anchor;
	}
	ElasticGraph grown = graph.with_leaf(target);
	Embedding placed = embedding.with_node(graph.next_id(), placement);
	return GraphState{std::move(grown), std::move(placed)};
}

GraphState apply_bisect_edge(const ElasticGraph& graph, const Embedding& embedding, NodeId a, NodeId b)
{
	if (!graph.find_edge(a, b))
		throw DataError("cannot bisect unknown edge (" + to_string(a) + ", " + to_string(b) + ")");
	embedding.require_matches(graph);
	const Eigen::VectorXd midpoint = 0.5 * (embedding.position(a) + embedding.position(b));
	ElasticGraph split = graph.with_bisected_edge(a, b);
	Embedding placed = embedding.with_node(graph.next_id(), midpoint);
	return GraphState{std::move(split), std::move(placed)};
}

GraphState apply(const ElasticGraph& graph, const Embedding& embedding, const GrammarOp& op,
                 const Dataset& dataset, const Partition& partition)
{
	if (const auto* add = std::get_if<AddNodeToNode>(&op))
		return apply_add_node(graph, embedding, add->target, dataset, partition);
	const auto& bisect = std::get<BisectEdge>(op);
	return apply_bisect_edge(graph, embedding, bisect.a, bisect.b);
}

std::vector<GrammarOp> enumerate_candidates(const ElasticGraph& graph)
{
	std::vector<GrammarOp> ops;
	ops.reserve(graph.node_count() + graph.edge_count());
	for (NodeId id : graph.nodes())
		ops.emplace_back(AddNodeToNode{id});
	for (const Edge& e : graph.edges())
		ops.emplace_back(BisectEdge{e.a, e.b});
	return ops;
}

namespace {

struct Trial
{
	std::optional<GraphState> state;
	std::optional<Embedding> fitted;
	double energy = kInfinity;
	std::exception_ptr error;
};

template<typename Fn>
void for_each_index(std::size_t count, unsigned jobs, Fn&& fn)
{
	const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
	if (workers <= 1) {
		for (std::size_t i = 0; i < count; ++i)
			fn(i);
		return;
	}
	std::atomic<std::size_t> next{0};
	std::vector<std::thread> pool;
	pool.reserve(workers);
	for (unsigned t = 0; t < workers; ++t) {
		pool.emplace_back([&] {
			for (std::size_t i = next++; i < count; i = next++)
				fn(i);
		});
	}
	for (auto& th : pool)
		th.join();
}

} // namespace

GrowthResult grow(const Dataset& dataset, const ElasticGraph& initial_graph, const Embedding& initial_embedding,
                  const GrowthConfig& config)
{
	config.validate();
	if (config.max_nodes < initial_graph.node_count())
		throw DataError("max_nodes (" + std::to_string(config.max_nodes) + ") is below the initial node count (" +
		                std::to_string(initial_graph.node_count()) + ")");

	OptimizerConfig trial_config = config.optimizer;
	trial_config.max_iterations = config.trial_iterations;

	FitResult committed = fit(initial_graph, dataset, initial_embedding, config.optimizer);
	GrowthResult result{initial_graph, committed.embedding, committed.partition, committed.trace.final_total(), {},
	                    committed.trace};
	double current = result.initial_energy;

	while (result.graph.node_count() < config.max_nodes) {
		const auto candidates = enumerate_candidates(result.graph);
		std::vector<Trial> trials(candidates.size());
		for_each_index(candidates.size(), config.jobs, [&](std::size_t i) {
			try {
				GraphState state = apply(result.graph, result.embedding, candidates[i], dataset, result.partition);
				FitResult f = fit(state.graph, dataset, state.embedding, trial_config);
				trials[i].energy = f.trace.final_total();
				trials[i].fitted = std::move(f.embedding);
				trials[i].state = std::move(state);
			} catch (...) {
				trials[i].error = std::current_exception();
			}
		});

		std::size_t best = 0;
		for (std::size_t i = 0; i < trials.size(); ++i) {
			if (trials[i].error)
				std::rethrow_exception(trials[i].error);
			if (trials[i].energy < trials[best].energy)
				best = i;
		}
		const double improvement = (current - trials[best].energy) / std::max(std::abs(current), 1e-300);
		if (!(improvement >= config.min_energy_improvement))
			break;

		FitResult refit = fit(trials[best].state->graph, dataset, *trials[best].fitted, config.optimizer);
		GrowthStep step;
		step.step = result.log.size() + 1;
		step.candidates = candidates.size();
		step.op = candidates[best];
		step.energy_before = current;
		step.energy_after = refit.trace.final_total();
		step.nodes = trials[best].state->graph.node_count();
		result.log.push_back(step);

		result.graph = std::move(trials[best].state->graph);
		result.embedding = std::move(refit.embedding);
		result.partition = std::move(refit.partition);
		result.trace = std::move(refit.trace);
		current = step.energy_after;
	}
	return result;
}

} // namespace epg
