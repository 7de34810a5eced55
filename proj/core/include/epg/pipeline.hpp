#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/grammar.hpp"
#include "epg/graph.hpp"
#include "epg/optimizer.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace epg {

/// Two nodes at mean +/- s * v, v the first principal axis and s half the
/// standard deviation along it.
struct PrincipalSegment
{
};

/// Node 1 at the densest point (smallest distance to its k-th nearest
/// neighbor), node 2 at the mean of that point's k nearest neighbors.
/// The seed selects which points are scored when N exceeds max_candidates.
struct LocalNeighborhood
{
	std::uint64_t seed = 0;
	std::size_t k_density = 10;
	std::size_t max_candidates = 2000;
};

using InitStrategy = std::variant<PrincipalSegment, LocalNeighborhood>;

/// Settings of one training epoch.
struct EpochSpec
{
	Mode mode = Mode::standard;
	double lambda = 0.01;
	double mu = 0.1;
	double r0 = kInfinity;
	/// Grow up to this many nodes; nullopt means fit the current graph only.
	std::optional<std::size_t> max_nodes;
	int trial_iterations = 10;
	double min_energy_improvement = 0.0;
	int max_iterations = 100;
	double ridge = 1e-9;

	void validate() const;
	OptimizerConfig optimizer() const;
	GrowthConfig growth(unsigned jobs = 1) const;
};

struct EpochResult
{
	EpochSpec spec;
	ElasticGraph graph;
	Embedding embedding;
	Partition partition;
	/// Empty for fit-only epochs.
	std::vector<GrowthStep> growth_log;
	/// Final fit trace of the epoch.
	FitTrace trace;
};

GraphState initialize(const Dataset& dataset, const InitStrategy& strategy, double lambda, double mu);

/// Run epochs in order: the first starts from initialize(), each later one
/// from the previous epoch's graph and embedding with its own moduli.
std::vector<EpochResult> run_epochs(const Dataset& dataset, const std::vector<EpochSpec>& epochs,
                                    const InitStrategy& strategy, unsigned jobs = 1);

/// Coarse standard epoch followed by a robust epoch whose moduli are
/// divided by `reduction`.
std::vector<EpochSpec> hybrid_preset(double lambda, double mu, double r0, std::size_t coarse_nodes,
                                     std::size_t fine_nodes, double reduction = 10.0);

} // namespace epg
