#include "epg/graph.hpp"

#include "epg/error.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace epg {

namespace {

void check_modulus(double value, const char* what)
{
	if (!std::isfinite(value) || value < 0.0)
		throw DataError(std::string(what) + " modulus must be finite and non-negative, got " +
		                std::to_string(value));
}

std::string pair_name(NodeId a, NodeId b)
{
	return "(" + to_string(a) + ", " + to_string(b) + ")";
}

Edge make_edge(NodeId a, NodeId b, double lambda)
{
	if (b < a)
		std::swap(a, b);
	return Edge{a, b, lambda};
}

bool edge_less(const Edge& x, const Edge& y)
{
	return std::tie(x.a, x.b) < std::tie(y.a, y.b);
}

} // namespace

std::string to_string(NodeId id)
{
	return std::to_string(id.value);
}

ElasticGraph ElasticGraph::create(std::size_t node_count,
                                  std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
                                  double lambda, double mu, bool primitive)
{
	if (node_count == 0)
		throw DataError("graph must have at least one node");
	std::vector<NodeId> nodes(node_count);
	for (std::size_t i = 0; i < node_count; ++i)
		nodes[i] = NodeId{static_cast<std::uint32_t>(i)};
	std::vector<Edge> edge_list;
	edge_list.reserve(edges.size());
	for (auto [a, b] : edges)
		edge_list.push_back(Edge{NodeId{a}, NodeId{b}, lambda});

	ElasticGraph g;
	g.primitive_ = primitive;
	g.lambda_ = lambda;
	g.mu_ = mu;
	check_modulus(lambda, "edge");
	check_modulus(mu, "star");
	g.nodes_ = std::move(nodes);
	for (const Edge& e : edge_list) {
		if (e.a == e.b)
			throw DataError("self-loop edge " + pair_name(e.a, e.b));
		g.edges_.push_back(make_edge(e.a, e.b, e.lambda));
	}
	std::sort(g.edges_.begin(), g.edges_.end(), edge_less);
	g.validate_topology();
	g.index_topology();
	if (primitive)
		g.stars_ = g.primitive_stars(mu);
	return g;
}

ElasticGraph ElasticGraph::from_parts(std::vector<NodeId> nodes, std::vector<Edge> edges,
                                      std::vector<Star> stars, bool primitive, double lambda,
                                      double mu)
{
	if (nodes.empty())
		throw DataError("graph must have at least one node");
	check_modulus(lambda, "edge");
	check_modulus(mu, "star");

	ElasticGraph g;
	g.primitive_ = primitive;
	g.lambda_ = lambda;
	g.mu_ = mu;
	std::sort(nodes.begin(), nodes.end());
	if (auto dup = std::adjacent_find(nodes.begin(), nodes.end()); dup != nodes.end())
		throw DataError("duplicate node id " + to_string(*dup));
	g.nodes_ = std::move(nodes);
	for (const Edge& e : edges) {
		if (e.a == e.b)
			throw DataError("self-loop edge " + pair_name(e.a, e.b));
		check_modulus(e.lambda, "edge");
		g.edges_.push_back(make_edge(e.a, e.b, e.lambda));
	}
	std::sort(g.edges_.begin(), g.edges_.end(), edge_less);
	g.validate_topology();
	g.index_topology();

	for (Star& s : stars)
		std::sort(s.leaves.begin(), s.leaves.end());
	std::sort(stars.begin(), stars.end(),
	          [](const Star& x, const Star& y) { return x.center < y.center; });
	g.stars_ = std::move(stars);
	g.validate_stars();
	if (primitive) {
		const auto expected = g.primitive_stars(mu);
		bool same = expected.size() == g.stars_.size();
		for (std::size_t i = 0; same && i < expected.size(); ++i)
			same = expected[i].center == g.stars_[i].center && expected[i].leaves == g.stars_[i].leaves;
		if (!same)
			throw DataError("star list does not follow the primitive rule");
	}
	return g;
}

void ElasticGraph::validate_topology() const
{
	for (std::size_t i = 0; i < edges_.size(); ++i) {
		const Edge& e = edges_[i];
		if (!contains(e.a) || !contains(e.b))
			throw DataError("edge " + pair_name(e.a, e.b) + " refers to an unknown node");
		if (i > 0 && edges_[i - 1].a == e.a && edges_[i - 1].b == e.b)
			throw DataError("duplicate edge " + pair_name(e.a, e.b));
	}

	// Connectivity by BFS over dense indices.
	const std::size_t n = nodes_.size();
	std::vector<std::vector<std::size_t>> adj(n);
	for (const Edge& e : edges_) {
		const auto ia = index_of(e.a);
		const auto ib = index_of(e.b);
		adj[ia].push_back(ib);
		adj[ib].push_back(ia);
	}
	std::vector<bool> seen(n, false);
	std::queue<std::size_t> queue;
	queue.push(0);
	seen[0] = true;
	std::size_t reached = 1;
	while (!queue.empty()) {
		const auto u = queue.front();
		queue.pop();
		for (auto v : adj[u]) {
			if (!seen[v]) {
				seen[v] = true;
				++reached;
				queue.push(v);
			}
		}
	}
	if (reached != n) {
		const auto missing = static_cast<std::size_t>(std::find(seen.begin(), seen.end(), false) - seen.begin());
		throw DataError("graph is disconnected: no path between nodes " +
		                pair_name(nodes_[0], nodes_[missing]));
	}
}

void ElasticGraph::validate_stars() const
{
	for (const Star& s : stars_) {
		if (!contains(s.center))
			throw DataError("star center " + to_string(s.center) + " is not a node");
		if (s.leaves.size() < 2)
			throw DataError("star centered at " + to_string(s.center) + " has fewer than 2 leaves");
		check_modulus(s.mu, "star");
		for (std::size_t i = 0; i < s.leaves.size(); ++i) {
			if (i > 0 && s.leaves[i] == s.leaves[i - 1])
				throw DataError("star centered at " + to_string(s.center) + " repeats leaf " +
				                to_string(s.leaves[i]));
			if (!find_edge(s.center, s.leaves[i]))
				throw DataError("star leaf pair " + pair_name(s.center, s.leaves[i]) +
				                " is not an edge");
		}
	}
}

void ElasticGraph::index_topology()
{
	adjacency_.assign(nodes_.size(), {});
	for (const Edge& e : edges_) {
		adjacency_[index_of(e.a)].push_back(e.b);
		adjacency_[index_of(e.b)].push_back(e.a);
	}
	for (auto& list : adjacency_)
		std::sort(list.begin(), list.end());
	next_id_ = NodeId{nodes_.back().value + 1};
}

std::vector<Star> ElasticGraph::primitive_stars(double mu) const
{
	std::vector<Star> stars;
	for (std::size_t i = 0; i < nodes_.size(); ++i) {
		if (adjacency_[i].size() >= 2)
			stars.push_back(Star{nodes_[i], adjacency_[i], mu});
	}
	return stars;
}

bool ElasticGraph::contains(NodeId id) const noexcept
{
	return std::binary_search(nodes_.begin(), nodes_.end(), id);
}

std::size_t ElasticGraph::index_of(NodeId id) const
{
	auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
	if (it == nodes_.end() || *it != id)
		throw DataError("unknown node " + to_string(id));
	return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t ElasticGraph::degree(NodeId id) const
{
	return adjacency_[index_of(id)].size();
}

const std::vector<NodeId>& ElasticGraph::neighbors(NodeId id) const
{
	return adjacency_[index_of(id)];
}

std::optional<std::size_t> ElasticGraph::find_edge(NodeId a, NodeId b) const noexcept
{
	const Edge key = make_edge(a, b, 0.0);
	auto it = std::lower_bound(edges_.begin(), edges_.end(), key, edge_less);
	if (it == edges_.end() || it->a != key.a || it->b != key.b)
		return std::nullopt;
	return static_cast<std::size_t>(it - edges_.begin());
}

ElasticGraph ElasticGraph::rebuild_stars(double mu) const
{
	if (!primitive_)
		throw DataError("rebuild_stars requires a primitive graph");
	check_modulus(mu, "star");
	ElasticGraph g = *this;
	g.mu_ = mu;
	g.stars_ = g.primitive_stars(mu);
	return g;
}

ElasticGraph ElasticGraph::with_moduli(double lambda, double mu) const
{
	check_modulus(lambda, "edge");
	check_modulus(mu, "star");
	ElasticGraph g = *this;
	g.lambda_ = lambda;
	g.mu_ = mu;
	for (Edge& e : g.edges_)
		e.lambda = lambda;
	for (Star& s : g.stars_)
		s.mu = mu;
	return g;
}

ElasticGraph ElasticGraph::with_leaf(NodeId target) const
{
	if (!contains(target))
		throw DataError("cannot add a node to unknown node " + to_string(target));
	ElasticGraph g = *this;
	const NodeId fresh = next_id_;
	g.nodes_.push_back(fresh);
	g.edges_.push_back(make_edge(target, fresh, lambda_));
	std::sort(g.edges_.begin(), g.edges_.end(), edge_less);
	g.index_topology();
	if (primitive_)
		g.stars_ = g.primitive_stars(mu_);
	return g;
}

ElasticGraph ElasticGraph::with_bisected_edge(NodeId a, NodeId b) const
{
	const auto pos = find_edge(a, b);
	if (!pos)
		throw DataError("cannot bisect unknown edge " + pair_name(a, b));
	ElasticGraph g = *this;
	const NodeId fresh = next_id_;
	const double lambda = edges_[*pos].lambda;
	g.edges_.erase(g.edges_.begin() + static_cast<std::ptrdiff_t>(*pos));
	g.nodes_.push_back(fresh);
	g.edges_.push_back(make_edge(a, fresh, lambda));
	g.edges_.push_back(make_edge(fresh, b, lambda));
	std::sort(g.edges_.begin(), g.edges_.end(), edge_less);
	g.index_topology();
	if (primitive_) {
		g.stars_ = g.primitive_stars(mu_);
	} else {
		for (Star& s : g.stars_) {
			for (NodeId& leaf : s.leaves) {
				if ((s.center == a && leaf == b) || (s.center == b && leaf == a))
					leaf = fresh;
			}
			std::sort(s.leaves.begin(), s.leaves.end());
		}
	}
	return g;
}

bool ElasticGraph::operator==(const ElasticGraph& other) const
{
	return nodes_ == other.nodes_ && edges_ == other.edges_ && stars_ == other.stars_ &&
	       primitive_ == other.primitive_ && lambda_ == other.lambda_ && mu_ == other.mu_;
}

} // namespace epg
