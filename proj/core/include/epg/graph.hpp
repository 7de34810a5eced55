#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace epg {

/// Stable node identifier. Ids are allocated monotonically and never reused
/// within one graph lineage, so partitions and logs can refer to them safely.
struct NodeId
{
	std::uint32_t value = 0;

	constexpr auto operator<=>(const NodeId&) const = default;
};

std::string to_string(NodeId id);

/// Undirected edge with its elasticity modulus. Endpoints are stored with a < b.
struct Edge
{
	NodeId a;
	NodeId b;
	double lambda = 0.0;

	bool operator==(const Edge&) const = default;
};

/// Elastic k-star: a center and its k >= 2 leaves (sorted by id).
struct Star
{
	NodeId center;
	std::vector<NodeId> leaves;
	double mu = 0.0;

	bool operator==(const Star&) const = default;
};

/// Topology of an elastic graph plus per-edge and per-star moduli.
///
/// Instances are immutable: every topology edit returns a new graph. The
/// graph is always simple and connected. In primitive mode the star list is
/// derived from topology: every node of degree >= 2 centers exactly one star
/// whose leaves are all of its neighbors.
///
/// Moduli are validated as finite and non-negative. Zero moduli are allowed
/// so that the degenerate (pure clustering) configuration stays expressible.
class ElasticGraph
{
public:
	/// Build a graph on nodes 0..node_count-1. Throws DataError naming the
	/// offending pair for self-loops, duplicates, unknown endpoints, or a
	/// disconnected result.
	static ElasticGraph create(std::size_t node_count,
	                           std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
	                           double lambda, double mu, bool primitive = true);

	/// Build from explicit parts (used by the JSON reader). Node ids may be
	/// any distinct values. For primitive graphs the given star list must
	/// match the primitive rule.
	static ElasticGraph from_parts(std::vector<NodeId> nodes, std::vector<Edge> edges,
	                               std::vector<Star> stars, bool primitive,
	                               double lambda, double mu);

	const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
	const std::vector<Edge>& edges() const noexcept { return edges_; }
	const std::vector<Star>& stars() const noexcept { return stars_; }
	bool primitive() const noexcept { return primitive_; }

	/// Modulus assigned to edges created by topology edits.
	double edge_modulus() const noexcept { return lambda_; }
	/// Modulus assigned to stars created by topology edits.
	double star_modulus() const noexcept { return mu_; }

	std::size_t node_count() const noexcept { return nodes_.size(); }
	std::size_t edge_count() const noexcept { return edges_.size(); }

	bool contains(NodeId id) const noexcept;
	/// Dense position of `id` in nodes(). Throws DataError for unknown ids.
	std::size_t index_of(NodeId id) const;
	std::size_t degree(NodeId id) const;
	/// Neighbors sorted by id.
	const std::vector<NodeId>& neighbors(NodeId id) const;
	std::optional<std::size_t> find_edge(NodeId a, NodeId b) const noexcept;
	bool is_tree() const noexcept { return edges_.size() + 1 == nodes_.size(); }
	NodeId next_id() const noexcept { return next_id_; }

	/// Re-derive the star list from the primitive rule with modulus mu.
	/// Requires primitive(). Idempotent.
	ElasticGraph rebuild_stars(double mu) const;

	/// Same topology with every edge set to lambda and every star to mu.
	ElasticGraph with_moduli(double lambda, double mu) const;

	/// New node attached to `target` by an edge; the new id is next_id().
	ElasticGraph with_leaf(NodeId target) const;

	/// Replace edge (a, b) by (a, z), (z, b) where z = next_id().
	ElasticGraph with_bisected_edge(NodeId a, NodeId b) const;

	bool operator==(const ElasticGraph& other) const;

private:
	ElasticGraph() = default;

	void index_topology();
	void validate_topology() const;
	void validate_stars() const;
	std::vector<Star> primitive_stars(double mu) const;

	std::vector<NodeId> nodes_;
	std::vector<Edge> edges_;
	std::vector<Star> stars_;
	std::vector<std::vector<NodeId>> adjacency_;
	bool primitive_ = true;
	double lambda_ = 0.0;
	double mu_ = 0.0;
	NodeId next_id_{};
};

/// Free-function form of ElasticGraph::degree.
inline std::size_t degree(const ElasticGraph& graph, NodeId node) { return graph.degree(node); }

/// Free-function form of ElasticGraph::rebuild_stars.
inline ElasticGraph rebuild_stars(const ElasticGraph& graph, double mu) { return graph.rebuild_stars(mu); }

} // namespace epg
