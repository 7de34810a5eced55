#include "epg/embedding.hpp"

#include "epg/error.hpp"

#include <algorithm>

namespace epg {

Embedding::Embedding(std::vector<NodeId> ids, Eigen::MatrixXd coords)
	: ids_(std::move(ids))
	, coords_(std::move(coords))
{
	if (static_cast<Eigen::Index>(ids_.size()) != coords_.rows())
		throw DataError("embedding has " + std::to_string(ids_.size()) + " ids but " +
		                std::to_string(coords_.rows()) + " positions");
	if (!std::is_sorted(ids_.begin(), ids_.end()) ||
	    std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end())
		throw DataError("embedding ids must be strictly increasing");
	if (!coords_.allFinite())
		throw DataError("embedding contains non-finite coordinates");
}

Embedding Embedding::for_graph(const ElasticGraph& graph, Eigen::MatrixXd coords)
{
	return Embedding(graph.nodes(), std::move(coords));
}

bool Embedding::contains(NodeId id) const noexcept
{
	return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::size_t Embedding::row_of(NodeId id) const
{
	auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
	if (it == ids_.end() || *it != id)
		throw DataError("no position for node " + to_string(id));
	return static_cast<std::size_t>(it - ids_.begin());
}

void Embedding::require_matches(const ElasticGraph& graph) const
{
	for (NodeId id : graph.nodes())
		if (!contains(id))
			throw DataError("no position for node " + to_string(id));
	for (NodeId id : ids_)
		if (!graph.contains(id))
			throw DataError("position given for node " + to_string(id) + " which is not in the graph");
}

Embedding Embedding::with_node(NodeId id, const Eigen::VectorXd& position) const
{
	if (!ids_.empty() && !(ids_.back() < id))
		throw DataError("appended node id must exceed existing ids");
	if (position.size() != coords_.cols())
		throw DataError("appended position has the wrong dimension");
	std::vector<NodeId> ids = ids_;
	ids.push_back(id);
	Eigen::MatrixXd coords(coords_.rows() + 1, coords_.cols());
	coords.topRows(coords_.rows()) = coords_;
	coords.row(coords_.rows()) = position.transpose();
	return Embedding(std::move(ids), std::move(coords));
}

} // namespace epg
