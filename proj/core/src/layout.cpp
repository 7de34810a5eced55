#include "epg/layout.hpp"

#include "epg/error.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace epg {

Eigen::Vector2d Layout2D::position(NodeId id) const
{
	auto it = std::lower_bound(ids.begin(), ids.end(), id);
	if (it == ids.end() || *it != id)
		throw DataError("no layout position for node " + to_string(id));
	return positions.row(it - ids.begin()).transpose();
}

double Layout2D::diameter() const
{
	double best = 0.0;
	for (Eigen::Index i = 0; i < positions.rows(); ++i)
		for (Eigen::Index j = i + 1; j < positions.rows(); ++j)
			best = std::max(best, (positions.row(i) - positions.row(j)).norm());
	return best;
}

double Layout2D::max_star_residual(const ElasticGraph& graph) const
{
	double worst = 0.0;
	for (const Star& s : graph.stars()) {
		Eigen::Vector2d mean = Eigen::Vector2d::Zero();
		for (NodeId leaf : s.leaves)
			mean += position(leaf);
		mean /= static_cast<double>(s.leaves.size());
		worst = std::max(worst, (position(s.center) - mean).norm());
	}
	return worst;
}

NodeId tree_centroid(const ElasticGraph& graph)
{
	if (!graph.is_tree())
		throw DataError("graph is not a tree");
	const std::size_t n = graph.node_count();
	// Subtree sizes with respect to a DFS from the first node.
	std::vector<std::size_t> parent(n, n), order, size(n, 1);
	order.reserve(n);
	std::vector<std::size_t> stack{0};
	std::vector<bool> seen(n, false);
	seen[0] = true;
	while (!stack.empty()) {
		const auto u = stack.back();
		stack.pop_back();
		order.push_back(u);
		for (NodeId v : graph.neighbors(graph.nodes()[u])) {
			const auto iv = graph.index_of(v);
			if (!seen[iv]) {
				seen[iv] = true;
				parent[iv] = u;
				stack.push_back(iv);
			}
		}
	}
	for (auto it = order.rbegin(); it != order.rend(); ++it)
		if (parent[*it] != n)
			size[parent[*it]] += size[*it];

	std::size_t best = 0;
	std::size_t best_worst = n + 1;
	for (std::size_t u = 0; u < n; ++u) {
		std::size_t worst = n - size[u];
		for (NodeId v : graph.neighbors(graph.nodes()[u])) {
			const auto iv = graph.index_of(v);
			if (parent[iv] == u)
				worst = std::max(worst, size[iv]);
		}
		if (worst < best_worst) {
			best_worst = worst;
			best = u;
		}
	}
	return graph.nodes()[best];
}

namespace {

struct RootedTree
{
	std::vector<std::size_t> parent;
	std::vector<std::vector<std::size_t>> children;
	std::vector<std::size_t> preorder;
	std::vector<std::size_t> leaves;
};

RootedTree root_tree(const ElasticGraph& graph, std::size_t root)
{
	const std::size_t n = graph.node_count();
	RootedTree t{std::vector<std::size_t>(n, n), std::vector<std::vector<std::size_t>>(n), {}, std::vector<std::size_t>(n, 0)};
	std::vector<std::size_t> stack{root};
	std::vector<bool> seen(n, false);
	seen[root] = true;
	while (!stack.empty()) {
		const auto u = stack.back();
		stack.pop_back();
		t.preorder.push_back(u);
		for (NodeId v : graph.neighbors(graph.nodes()[u])) {
			const auto iv = graph.index_of(v);
			if (!seen[iv]) {
				seen[iv] = true;
				t.parent[iv] = u;
				t.children[u].push_back(iv); // ascending id order
			}
		}
		for (auto it = t.children[u].rbegin(); it != t.children[u].rend(); ++it)
			stack.push_back(*it);
	}
	for (auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it) {
		const auto u = *it;
		if (t.children[u].empty())
			t.leaves[u] = 1;
		for (auto c : t.children[u])
			t.leaves[u] += t.leaves[c];
	}
	return t;
}

double star_residual(const ElasticGraph& graph, const Eigen::MatrixX2d& pos, std::size_t u)
{
	const auto& nbrs = graph.neighbors(graph.nodes()[u]);
	Eigen::Vector2d mean = Eigen::Vector2d::Zero();
	for (NodeId v : nbrs)
		mean += pos.row(static_cast<Eigen::Index>(graph.index_of(v))).transpose();
	mean /= static_cast<double>(nbrs.size());
	return (pos.row(static_cast<Eigen::Index>(u)).transpose() - mean).norm();
}

// Exact harmonic placement of interior nodes with leaves held fixed.
void solve_harmonic(const ElasticGraph& graph, Eigen::MatrixX2d& pos)
{
	const std::size_t n = graph.node_count();
	std::vector<Eigen::Index> slot(n, -1);
	Eigen::Index interior = 0;
	for (std::size_t u = 0; u < n; ++u)
		if (graph.neighbors(graph.nodes()[u]).size() >= 2)
			slot[u] = interior++;
	if (interior == 0)
		return;
	std::vector<Eigen::Triplet<double>> triplets;
	Eigen::MatrixX2d rhs = Eigen::MatrixX2d::Zero(interior, 2);
	for (std::size_t u = 0; u < n; ++u) {
		if (slot[u] < 0)
			continue;
		const auto& nbrs = graph.neighbors(graph.nodes()[u]);
		triplets.emplace_back(slot[u], slot[u], static_cast<double>(nbrs.size()));
		for (NodeId v : nbrs) {
			const auto iv = graph.index_of(v);
			if (slot[iv] >= 0)
				triplets.emplace_back(slot[u], slot[iv], -1.0);
			else
				rhs.row(slot[u]) += pos.row(static_cast<Eigen::Index>(iv));
		}
	}
	Eigen::SparseMatrix<double> system(interior, interior);
	system.setFromTriplets(triplets.begin(), triplets.end());
	Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(system);
	if (solver.info() != Eigen::Success)
		throw NumericalError("harmonic layout system is singular");
	const Eigen::MatrixX2d sol = solver.solve(rhs);
	for (std::size_t u = 0; u < n; ++u)
		if (slot[u] >= 0)
			pos.row(static_cast<Eigen::Index>(u)) = sol.row(slot[u]);
}

} // namespace

Layout2D metro_layout(const ElasticGraph& graph, const Embedding& embedding, const LayoutParams& params)
{
	if (!graph.is_tree())
		throw DataError("metro layout requires a tree (graph has " + std::to_string(graph.edge_count()) +
		                " edges on " + std::to_string(graph.node_count()) + " nodes)");
	embedding.require_matches(graph);
	if (!(params.harmonic_tolerance > 0.0) || params.max_rounds < 0)
		throw DataError("layout tolerance must be positive and max_rounds non-negative");

	const std::size_t n = graph.node_count();
	Layout2D layout;
	layout.ids = graph.nodes();
	layout.positions = Eigen::MatrixX2d::Zero(static_cast<Eigen::Index>(n), 2);
	layout.root = tree_centroid(graph);
	const std::size_t root = graph.index_of(layout.root);
	const RootedTree tree = root_tree(graph, root);

	// Angular seeding.
	std::vector<double> sector_start(n, 0.0), sector_width(n, 0.0);
	sector_width[root] = 2.0 * std::numbers::pi;
	for (std::size_t u : tree.preorder) {
		double cursor = sector_start[u];
		for (std::size_t c : tree.children[u]) {
			const double width = sector_width[u] * static_cast<double>(tree.leaves[c]) / static_cast<double>(tree.leaves[u]);
			sector_start[c] = cursor;
			sector_width[c] = width;
			cursor += width;
			const double angle = sector_start[c] + 0.5 * width;
			const double length = (embedding.position(graph.nodes()[u]) - embedding.position(graph.nodes()[c])).norm();
			layout.positions.row(static_cast<Eigen::Index>(c)) =
				layout.positions.row(static_cast<Eigen::Index>(u)) + length * Eigen::RowVector2d(std::cos(angle), std::sin(angle));
		}
	}

	// Harmonic relaxation.
	std::vector<std::size_t> centers;
	for (std::size_t u = 0; u < n; ++u)
		if (graph.neighbors(graph.nodes()[u]).size() >= 2)
			centers.push_back(u);
	auto max_residual = [&] {
		double worst = 0.0;
		for (auto u : centers)
			worst = std::max(worst, star_residual(graph, layout.positions, u));
		return worst;
	};
	// The diameter is refreshed only when the residual test passes against the cached value.
	double diameter = layout.diameter();
	auto converged = [&] {
		const double residual = max_residual();
		if (residual > params.harmonic_tolerance * diameter)
			return false;
		diameter = layout.diameter();
		return residual <= params.harmonic_tolerance * diameter;
	};

	bool done = centers.empty() || converged();
	while (!done && layout.rounds < params.max_rounds) {
		for (auto u : centers) {
			const auto& nbrs = graph.neighbors(graph.nodes()[u]);
			Eigen::RowVector2d mean = Eigen::RowVector2d::Zero();
			for (NodeId v : nbrs)
				mean += layout.positions.row(static_cast<Eigen::Index>(graph.index_of(v)));
			layout.positions.row(static_cast<Eigen::Index>(u)) = mean / static_cast<double>(nbrs.size());
		}
		++layout.rounds;
		done = converged();
	}
	if (!done) {
		solve_harmonic(graph, layout.positions);
		layout.relaxed = false;
	}
	return layout;
}

std::size_t NodeComposition::occupants(NodeId id) const
{
	auto it = counts.find(id);
	if (it == counts.end())
		return 0;
	std::size_t total = 0;
	for (const auto& [label, count] : it->second)
		total += count;
	return total;
}

std::size_t NodeComposition::total() const
{
	std::size_t sum = 0;
	for (const auto& [id, labels] : counts)
		sum += occupants(id);
	return sum;
}

NodeComposition node_compositions(const Dataset& dataset, const Partition& partition)
{
	if (!dataset.has_labels())
		throw DataError("node compositions need labeled data");
	if (partition.size() != dataset.size())
		throw DataError("partition does not match the dataset");
	NodeComposition result;
	for (std::size_t i = 0; i < partition.size(); ++i)
		++result.counts[partition.owner[i]][dataset.labels()[i]];
	return result;
}

std::vector<PieSlice> pie_slices(const std::map<std::string, std::size_t>& counts)
{
	std::size_t total = 0;
	for (const auto& [label, count] : counts)
		total += count;
	std::vector<PieSlice> slices;
	if (total == 0)
		return slices;
	double start = 0.0;
	for (const auto& [label, count] : counts) {
		if (count == 0)
			continue;
		const double sweep = 360.0 * static_cast<double>(count) / static_cast<double>(total);
		slices.push_back(PieSlice{label, start, sweep});
		start += sweep;
	}
	return slices;
}

} // namespace epg
