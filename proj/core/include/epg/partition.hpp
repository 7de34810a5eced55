#pragma once

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/graph.hpp"

#include <cstddef>
#include <limits>
#include <vector>

namespace epg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Nearest-node assignment of every data point, with the close/far split
/// used by the trimmed energy.
struct Partition
{
	/// owner[i] is the node closest to point i (smallest id on ties).
	std::vector<NodeId> owner;
	/// close[i] is true iff ||x_i - phi(owner[i])|| <= r0.
	std::vector<bool> close;
	double r0 = kInfinity;

	std::size_t size() const noexcept { return owner.size(); }

	/// Points whose owner or close flag differ between the two partitions.
	std::size_t differences(const Partition& other) const;

	bool operator==(const Partition& other) const
	{
		return owner == other.owner && close == other.close;
	}
};

/// Assign each point to its nearest node. Distances are compared squared;
/// a point exactly at distance r0 is close. r0 = infinity marks every
/// point close. Throws DataError for an empty embedding or a dimension
/// mismatch, and for r0 <= 0 or NaN.
Partition build_partition(const Dataset& dataset, const Embedding& embedding, double r0 = kInfinity);

/// Throws DataError unless `partition` has one owner per point and every
/// owner has a position in `embedding`.
void require_consistent(const Dataset& dataset, const Embedding& embedding, const Partition& partition);

} // namespace epg
