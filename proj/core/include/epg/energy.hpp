#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/graph.hpp"
#include "epg/partition.hpp"

namespace epg {

enum class Mode
{
	standard,
	robust,
};

const char* to_string(Mode mode) noexcept;
Mode parse_mode(const std::string& text);

struct GraphEnergy
{
	double edge = 0.0;
	double star = 0.0;
};

/// Decomposed energy of one (graph, embedding, partition) state.
struct EnergyReport
{
	double edge_energy = 0.0;
	double star_energy = 0.0;
	double approx_energy = 0.0;
	double total = 0.0;
	bool robust_mode = false;
	double r0 = kInfinity;
};

/// Elastic energy: sum of lambda * |phi(a) - phi(b)|^2 over edges and
/// mu * |phi(center) - mean(phi(leaves))|^2 over stars.
GraphEnergy graph_energy(const ElasticGraph& graph, const Embedding& embedding);

/// Weighted mean squared distance from each point to its owner node,
/// normalized by the total dataset weight.
double approx_energy(const Dataset& dataset, const Embedding& embedding, const Partition& partition);

/// Trimmed variant: each squared distance is capped at r0^2. The result
/// never exceeds r0^2 nor approx_energy() on the same inputs.
double robust_approx_energy(const Dataset& dataset, const Embedding& embedding,
                            const Partition& partition, double r0);

/// Trimmed per-point penalty min(d^2, r0^2).
inline double trimmed_square(double squared_distance, double r0_squared) noexcept
{
	return squared_distance < r0_squared ? squared_distance : r0_squared;
}

EnergyReport total_energy(const ElasticGraph& graph, const Embedding& embedding, const Dataset& dataset,
                          const Partition& partition, Mode mode, double r0 = kInfinity);

} // namespace epg
