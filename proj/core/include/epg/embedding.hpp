#pragma once

#include "epg/graph.hpp"

#include <Eigen/Core>

#include <vector>

namespace epg {

/// Node positions in data space. Row i of coords() is the position of ids()[i];
/// ids are kept sorted so that rows line up with ElasticGraph::nodes().
class Embedding
{
public:
	Embedding(std::vector<NodeId> ids, Eigen::MatrixXd coords);

	/// Rows of `coords` follow graph.nodes().
	static Embedding for_graph(const ElasticGraph& graph, Eigen::MatrixXd coords);

	const std::vector<NodeId>& ids() const noexcept { return ids_; }
	const Eigen::MatrixXd& coords() const noexcept { return coords_; }
	std::size_t size() const noexcept { return ids_.size(); }
	std::size_t dimension() const noexcept { return static_cast<std::size_t>(coords_.cols()); }

	bool contains(NodeId id) const noexcept;
	std::size_t row_of(NodeId id) const;
	Eigen::VectorXd position(NodeId id) const { return coords_.row(static_cast<Eigen::Index>(row_of(id))).transpose(); }

	/// Throws DataError naming the first graph node without a position, or
	/// the first position that belongs to no graph node.
	void require_matches(const ElasticGraph& graph) const;

	/// Copy with one extra node appended (id must exceed all current ids).
	Embedding with_node(NodeId id, const Eigen::VectorXd& position) const;

	bool operator==(const Embedding& other) const
	{
		return ids_ == other.ids_ && coords_.rows() == other.coords_.rows() &&
		       coords_.cols() == other.coords_.cols() && coords_ == other.coords_;
	}

private:
	std::vector<NodeId> ids_;
	Eigen::MatrixXd coords_;
};

} // namespace epg
