#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/energy.hpp"
#include "epg/graph.hpp"
#include "epg/partition.hpp"

#include <cstddef>
#include <vector>

namespace epg {

struct OptimizerConfig
{
	Mode mode = Mode::standard;
	/// Robustness radius. Must be finite in robust mode; ignored (treated as
	/// infinity) in standard mode.
	double r0 = kInfinity;
	int max_iterations = 100;
	/// Optional early stop on relative energy decrease; 0 disables it and
	/// the loop runs until the partition stops changing.
	double energy_tolerance = 0.0;
	/// Proximal regularization: adds ridge * |phi - phi_prev|^2 to each
	/// quadratic step, so unconstrained nodes stay where they were.
	double ridge = 1e-9;

	void validate() const;
	double effective_r0() const noexcept { return mode == Mode::robust ? r0 : kInfinity; }
};

struct IterationRecord
{
	EnergyReport energy;
	std::size_t points_reassigned = 0;
};

struct FitTrace
{
	/// Energy of the initial embedding under its own partition.
	EnergyReport initial;
	std::vector<IterationRecord> iterations;
	bool converged = false;

	double final_total() const noexcept
	{
		return iterations.empty() ? initial.total : iterations.back().energy.total;
	}
};

struct FitResult
{
	Embedding embedding;
	Partition partition;
	FitTrace trace;
};

/// Exact minimizer of the quadratic surrogate for a frozen partition:
///
///   (1/W) sum_{close x} w(x) |x - phi(owner(x))|^2 + edge term + star term
///   + ridge * |phi - phi_prev|^2
///
/// Far points only add a constant and are left out of the system. One
/// sparse symmetric system is factorized and solved for all coordinates.
/// Throws NumericalError when the system is singular.
Embedding solve_positions(const ElasticGraph& graph, const Dataset& dataset, const Partition& partition,
                          const OptimizerConfig& config, const Embedding& previous);

/// Splitting loop: alternate solve_positions and build_partition until the
/// assignment (owners and close flags) stops changing or max_iterations is
/// reached. The total energy recorded in the trace never increases.
FitResult fit(const ElasticGraph& graph, const Dataset& dataset, const Embedding& initial,
              const OptimizerConfig& config);

} // namespace epg
