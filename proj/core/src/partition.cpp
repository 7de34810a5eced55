#include "epg/partition.hpp"

#include "epg/error.hpp"

#include <cmath>

namespace epg {

std::size_t Partition::differences(const Partition& other) const
{
	if (other.size() != size())
		throw DataError("cannot compare partitions of different sizes");
	std::size_t count = 0;
	for (std::size_t i = 0; i < owner.size(); ++i)
		if (owner[i] != other.owner[i] || close[i] != other.close[i])
			++count;
	return count;
}

Partition build_partition(const Dataset& dataset, const Embedding& embedding, double r0)
{
	if (embedding.size() == 0)
		throw DataError("cannot partition data over an empty node set");
	if (embedding.dimension() != dataset.dimension())
		throw DataError("embedding dimension " + std::to_string(embedding.dimension()) +
		                " does not match data dimension " + std::to_string(dataset.dimension()));
	if (std::isnan(r0) || r0 <= 0.0)
		throw DataError("robustness radius must be positive");

	const Eigen::MatrixXd& x = dataset.points();
	const Eigen::MatrixXd& nodes = embedding.coords();
	const auto n_points = x.rows();
	const auto n_nodes = nodes.rows();
	const double r0_sq = std::isinf(r0) ? kInfinity : r0 * r0;

	Partition p;
	p.r0 = r0;
	p.owner.resize(static_cast<std::size_t>(n_points));
	p.close.resize(static_cast<std::size_t>(n_points));
	for (Eigen::Index i = 0; i < n_points; ++i) {
		Eigen::Index best = 0;
		double best_sq = (x.row(i) - nodes.row(0)).squaredNorm();
		for (Eigen::Index k = 1; k < n_nodes; ++k) {
			const double d = (x.row(i) - nodes.row(k)).squaredNorm();
			if (d < best_sq) {
				best_sq = d;
				best = k;
			}
		}
		p.owner[static_cast<std::size_t>(i)] = embedding.ids()[static_cast<std::size_t>(best)];
		p.close[static_cast<std::size_t>(i)] = best_sq <= r0_sq;
	}
	return p;
}

void require_consistent(const Dataset& dataset, const Embedding& embedding, const Partition& partition)
{
	if (partition.size() != dataset.size() || partition.close.size() != dataset.size())
		throw DataError("partition covers " + std::to_string(partition.size()) + " points but the dataset has " +
		                std::to_string(dataset.size()));
	for (NodeId id : partition.owner)
		if (!embedding.contains(id))
			throw DataError("partition refers to node " + to_string(id) + " which has no position");
}

} // namespace epg
