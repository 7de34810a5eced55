#include "epg/error.hpp"
#include "epg/graph.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace epg;

namespace {

using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

ElasticGraph make(std::size_t n, const Pairs& edges, double lambda = 1.0, double mu = 1.0)
{
	return ElasticGraph::create(n, edges, lambda, mu, true);
}

void check_primitive_rule(const ElasticGraph& g)
{
	std::size_t centers = 0;
	for (NodeId id : g.nodes())
		if (g.degree(id) >= 2)
			++centers;
	REQUIRE(g.stars().size() == centers);
	for (const Star& s : g.stars())
		CHECK(s.leaves == g.neighbors(s.center));
}

} // namespace

TEST_CASE("new_graph synthesizes primitive stars")
{
	SUBCASE("single edge has no star")
	{
		const auto g = make(2, {{0, 1}});
		CHECK(g.edge_count() == 1);
		CHECK(g.stars().empty());
	}
	SUBCASE("3-node path has one 2-star at the middle")
	{
		const auto g = make(3, {{0, 1}, {1, 2}});
		CHECK(g.edge_count() == 2);
		REQUIRE(g.stars().size() == 1);
		CHECK(g.stars()[0].center == NodeId{1});
		CHECK(g.stars()[0].leaves == std::vector<NodeId>{NodeId{0}, NodeId{2}});
	}
	SUBCASE("4-node star has one 3-star at the hub")
	{
		const auto g = make(4, {{0, 1}, {0, 2}, {0, 3}}, 0.5, 2.0);
		REQUIRE(g.stars().size() == 1);
		CHECK(g.stars()[0].center == NodeId{0});
		CHECK(g.stars()[0].leaves.size() == 3);
		CHECK(g.stars()[0].mu == 2.0);
		for (const Edge& e : g.edges())
			CHECK(e.lambda == 0.5);
	}
}

TEST_CASE("new_graph rejects bad topologies with the offending pair")
{
	CHECK_THROWS_WITH_AS(make(3, {{0, 1}}), doctest::Contains("(0, 2)"), DataError);
	CHECK_THROWS_WITH_AS(make(2, {{0, 1}, {1, 0}}), doctest::Contains("duplicate edge (0, 1)"), DataError);
	CHECK_THROWS_WITH_AS(make(2, {{1, 1}}), doctest::Contains("self-loop"), DataError);
	CHECK_THROWS_WITH_AS(make(2, {{0, 5}}), doctest::Contains("(0, 5)"), DataError);
	CHECK_THROWS_AS(make(2, {{0, 1}}, -1.0), DataError);
	CHECK_THROWS_AS(make(0, {}), DataError);
}

TEST_CASE("degree")
{
	const auto g = make(4, {{0, 1}, {0, 2}, {0, 3}});
	CHECK(g.degree(NodeId{0}) == 3);
	CHECK(degree(g, NodeId{2}) == 1);
	CHECK_THROWS_AS(g.degree(NodeId{9}), DataError);
	const auto path = make(3, {{0, 1}, {1, 2}});
	CHECK(path.degree(NodeId{0}) == 1);
}

TEST_CASE("rebuild_stars follows topology and is idempotent")
{
	const auto path = make(3, {{0, 1}, {1, 2}});
	const auto longer = path.with_leaf(NodeId{2});
	REQUIRE(longer.stars().size() == 2);
	CHECK(longer.stars()[0].center == NodeId{1});
	CHECK(longer.stars()[1].center == NodeId{2});
	CHECK(longer.rebuild_stars(1.0).stars() == longer.stars());
	CHECK(rebuild_stars(rebuild_stars(longer, 3.0), 3.0) == rebuild_stars(longer, 3.0));
	CHECK(make(2, {{0, 1}}).rebuild_stars(1.0).stars().empty());

	const auto plain = ElasticGraph::create(3, Pairs{{0, 1}, {1, 2}}, 1.0, 1.0, false);
	CHECK(plain.stars().empty());
	CHECK_THROWS_AS(plain.rebuild_stars(1.0), DataError);
}

TEST_CASE("topology edits allocate monotone ids and keep trees primitive")
{
	std::mt19937_64 rng(3);
	auto g = make(2, {{0, 1}});
	for (int step = 0; step < 40; ++step) {
		const NodeId fresh = g.next_id();
		if (rng() % 2 == 0) {
			const auto& nodes = g.nodes();
			g = g.with_leaf(nodes[rng() % nodes.size()]);
		} else {
			const auto& e = g.edges()[rng() % g.edge_count()];
			g = g.with_bisected_edge(e.a, e.b);
		}
		CHECK(g.nodes().back() == fresh);
		CHECK(g.is_tree());
		check_primitive_rule(g);
	}
	CHECK_THROWS_AS(g.with_leaf(NodeId{1000}), DataError);
	CHECK_THROWS_AS(g.with_bisected_edge(NodeId{0}, NodeId{1000}), DataError);
}

TEST_CASE("from_parts validates stars")
{
	std::vector<NodeId> nodes{NodeId{3}, NodeId{7}, NodeId{9}};
	std::vector<Edge> edges{{NodeId{7}, NodeId{3}, 1.0}, {NodeId{7}, NodeId{9}, 1.0}};
	const auto g = ElasticGraph::from_parts(nodes, edges, {Star{NodeId{7}, {NodeId{9}, NodeId{3}}, 0.5}}, true, 1.0, 0.5);
	CHECK(g.next_id() == NodeId{10});
	CHECK(g.edges()[0].a == NodeId{3});
	CHECK(g.stars()[0].leaves.front() == NodeId{3});
	CHECK_THROWS_AS(ElasticGraph::from_parts(nodes, edges, {}, true, 1.0, 0.5), DataError);
	CHECK_THROWS_AS(ElasticGraph::from_parts(nodes, edges, {Star{NodeId{3}, {NodeId{7}, NodeId{9}}, 1.0}}, false, 1.0, 1.0),
	                DataError);
	// non-primitive graphs may carry any valid subset of stars, including none
	CHECK(ElasticGraph::from_parts(nodes, edges, {}, false, 1.0, 1.0).stars().empty());
}
