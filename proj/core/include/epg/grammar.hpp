#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/graph.hpp"
#include "epg/optimizer.hpp"
#include "epg/partition.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace epg {

struct AddNodeToNode
{
	NodeId target;
	bool operator==(const AddNodeToNode&) const = default;
};

struct BisectEdge
{
	NodeId a;
	NodeId b;
	bool operator==(const BisectEdge&) const = default;
};

using GrammarOp = std::variant<AddNodeToNode, BisectEdge>;

std::string describe(const GrammarOp& op);

struct GraphState
{
	ElasticGraph graph;
	Embedding embedding;
};

struct GrowthConfig
{
	std::size_t max_nodes = 10;
	/// Splitting iterations spent on each candidate before comparison.
	int trial_iterations = 10;
	/// Stop when the best candidate improves the committed energy by less
	/// than this fraction.
	double min_energy_improvement = 0.0;
	OptimizerConfig optimizer;
	/// Worker threads for candidate trials; results do not depend on it.
	unsigned jobs = 1;

	void validate() const;
};

struct GrowthStep
{
	std::size_t step = 0;
	std::size_t candidates = 0;
	GrammarOp op;
	double energy_before = 0.0;
	double energy_after = 0.0;
	std::size_t nodes = 0;
};

struct GrowthResult
{
	ElasticGraph graph;
	Embedding embedding;
	Partition partition;
	/// Committed energy of the fitted initial graph.
	double initial_energy = 0.0;
	std::vector<GrowthStep> log;
	/// Trace of the last committed full fit.
	FitTrace trace;
};

/// Attach a new node to `target`. It is placed at the weighted mean of the
/// target's close points when there are any; otherwise at
/// 2 phi(target) - phi(n) for the target's first neighbor n, or on top of
/// the target when it has no neighbor.
GraphState apply_add_node(const ElasticGraph& graph, const Embedding& embedding, NodeId target,
                          const Dataset& dataset, const Partition& partition);

/// Split edge (a, b) with a new node at the midpoint.
GraphState apply_bisect_edge(const ElasticGraph& graph, const Embedding& embedding, NodeId a, NodeId b);

GraphState apply(const ElasticGraph& graph, const Embedding& embedding, const GrammarOp& op,
                 const Dataset& dataset, const Partition& partition);

/// One AddNodeToNode per node (ascending id) followed by one BisectEdge per
/// edge (lexicographic).
std::vector<GrammarOp> enumerate_candidates(const ElasticGraph& graph);

/// Greedy growth: fit the initial graph, then repeatedly try every
/// candidate for trial_iterations, commit the one with the lowest energy
/// (earliest on ties) and re-fit it to convergence.
GrowthResult grow(const Dataset& dataset, const ElasticGraph& initial_graph, const Embedding& initial_embedding,
                  const GrowthConfig& config);

} // namespace epg
