#include "epg/error.hpp"
#include "epg/io.hpp"
#include "epg/layout.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace epg;

namespace {

using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

} // namespace

TEST_CASE("metro_layout: three-node path")
{
	const auto g = ElasticGraph::create(3, Pairs{{0, 1}, {1, 2}}, 1.0, 1.0);
	Eigen::MatrixXd c(3, 3);
	c << 0, 0, 0, 1, 1, 0, 2, 0, 1;
	const auto emb = Embedding::for_graph(g, c);
	const auto layout = metro_layout(g, emb);
	CHECK(layout.root == NodeId{1});
	const Eigen::Vector2d a = layout.position(NodeId{0});
	const Eigen::Vector2d m = layout.position(NodeId{1});
	const Eigen::Vector2d b = layout.position(NodeId{2});
	CHECK((m - 0.5 * (a + b)).norm() <= 1e-6 * layout.diameter());
	const Eigen::Vector2d u = a - m;
	const Eigen::Vector2d v = b - m;
	CHECK(std::abs(u.x() * v.y() - u.y() * v.x()) <= 1e-9 * u.norm() * v.norm());
}

TEST_CASE("metro_layout: symmetric three-star")
{
	const auto g = ElasticGraph::create(4, Pairs{{0, 1}, {0, 2}, {0, 3}}, 1.0, 1.0);
	Eigen::MatrixXd c(4, 2);
	const double h = std::sqrt(3.0) / 2.0;
	c << 0, 0, 1, 0, -0.5, h, -0.5, -h;
	const auto layout = metro_layout(g, Embedding::for_graph(g, c));
	const Eigen::Vector2d center = layout.position(NodeId{0});
	const Eigen::Vector2d mean =
	    (layout.position(NodeId{1}) + layout.position(NodeId{2}) + layout.position(NodeId{3})) / 3.0;
	CHECK((center - mean).norm() <= 1e-6 * layout.diameter());
	std::vector<double> angles;
	for (std::uint32_t k = 1; k <= 3; ++k) {
		const Eigen::Vector2d d = layout.position(NodeId{k}) - center;
		CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-9));
		angles.push_back(std::atan2(d.y(), d.x()));
	}
	std::sort(angles.begin(), angles.end());
	const double third = 2.0 * std::numbers::pi / 3.0;
	CHECK(angles[1] - angles[0] == doctest::Approx(third).epsilon(1e-9));
	CHECK(angles[2] - angles[1] == doctest::Approx(third).epsilon(1e-9));
}

TEST_CASE("metro_layout: random trees satisfy the star-mean bound")
{
	std::mt19937_64 rng(19);
	for (int trial = 0; trial < 20; ++trial) {
		const std::size_t n = 2 + rng() % 29;
		const auto g = test::random_tree(rng, n, 1.0, 1.0);
		const auto emb = Embedding::for_graph(g, test::random_matrix(rng, static_cast<Eigen::Index>(n), 4));
		const auto layout = metro_layout(g, emb);
		CHECK(layout.max_star_residual(g) <= 1e-6 * layout.diameter());
		CHECK(layout.positions.allFinite());
		const auto again = metro_layout(g, emb);
		CHECK(again.positions == layout.positions);
	}
}

TEST_CASE("metro_layout: the exact fallback also satisfies the bound")
{
	std::mt19937_64 rng(23);
	const auto g = test::random_tree(rng, 25, 1.0, 1.0);
	const auto emb = Embedding::for_graph(g, test::random_matrix(rng, 25, 3));
	LayoutParams p;
	p.max_rounds = 1;
	const auto layout = metro_layout(g, emb, p);
	CHECK_FALSE(layout.relaxed);
	CHECK(layout.max_star_residual(g) <= 1e-6 * layout.diameter());
}

TEST_CASE("metro_layout rejects cycles and tree_centroid balances")
{
	const auto cycle = ElasticGraph::create(3, Pairs{{0, 1}, {1, 2}, {0, 2}}, 1.0, 1.0);
	const auto emb = Embedding::for_graph(cycle, Eigen::MatrixXd::Random(3, 2));
	CHECK_THROWS_AS(metro_layout(cycle, emb), DataError);

	const auto path = ElasticGraph::create(5, Pairs{{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 1.0, 1.0);
	CHECK(tree_centroid(path) == NodeId{2});
	const auto even = ElasticGraph::create(4, Pairs{{0, 1}, {1, 2}, {2, 3}}, 1.0, 1.0);
	CHECK(tree_centroid(even) == NodeId{1});
}

TEST_CASE("node_compositions")
{
	const auto g = ElasticGraph::create(2, Pairs{{0, 1}}, 1.0, 1.0);
	Eigen::MatrixXd c(2, 1);
	c << 0, 10;
	const auto emb = Embedding::for_graph(g, c);
	Eigen::MatrixXd x(5, 1);
	x << -0.1, 0.2, 9.9, 10.1, 50;
	const Dataset d(x, Eigen::VectorXd::Ones(5), {"a", "a", "b", "b", "b"});
	const auto part = build_partition(d, emb, 1.0);
	const auto comp = node_compositions(d, part);
	CHECK(comp.total() == 5); // the far point at 50 still has an owner
	CHECK(comp.counts.at(NodeId{0}) == std::map<std::string, std::size_t>{{"a", 2}});
	CHECK(comp.counts.at(NodeId{1}) == std::map<std::string, std::size_t>{{"b", 3}});
	CHECK(comp.occupants(NodeId{1}) == 3);

	CHECK_THROWS_AS(node_compositions(Dataset(x), part), DataError);

	std::mt19937_64 rng(3);
	const auto tree = test::random_tree(rng, 9, 1.0, 1.0);
	const auto temb = Embedding::for_graph(tree, test::random_matrix(rng, 9, 2));
	const Dataset big(test::random_matrix(rng, 200, 2), Eigen::VectorXd::Ones(200), std::vector<std::string>(200, "z"));
	const auto bc = node_compositions(big, build_partition(big, temb));
	CHECK(bc.total() == 200);
	for (const auto& [id, counts] : bc.counts)
		CHECK(counts.size() == 1);
}

TEST_CASE("pie slices and svg")
{
	const auto slices = pie_slices({{"a", 3}, {"b", 1}});
	REQUIRE(slices.size() == 2);
	CHECK(slices[0].label == "a");
	CHECK(slices[0].start_degrees == 0.0);
	CHECK(slices[0].sweep_degrees == doctest::Approx(270.0));
	CHECK(slices[1].start_degrees == doctest::Approx(270.0));
	CHECK(slices[1].sweep_degrees == doctest::Approx(90.0));

	const auto g = ElasticGraph::create(3, Pairs{{0, 1}, {1, 2}}, 1.0, 1.0);
	Eigen::MatrixXd c(3, 2);
	c << 0, 0, 1, 0, 2, 0;
	const auto layout = metro_layout(g, Embedding::for_graph(g, c));
	const auto plain = export_svg(layout, g);
	CHECK(plain.find("<svg") != std::string::npos);
	CHECK(plain.find("<path") == std::string::npos);
	CHECK(plain.find("<circle") != std::string::npos);

	NodeComposition comp;
	comp.counts[NodeId{1}] = {{"a<&>", 3}, {"b", 1}};
	comp.counts[NodeId{0}] = {{"b", 2}};
	const auto pies = export_svg(layout, g, &comp);
	CHECK(pies.find("<path") != std::string::npos);
	CHECK(pies.find("a&lt;&amp;&gt;") != std::string::npos);
	CHECK(pies.find("a<&>") == std::string::npos);
}

TEST_CASE("graph JSON round-trips exactly")
{
	std::mt19937_64 rng(31);
	const auto g = test::random_tree(rng, 12, 0.0123, 4.56);
	const auto emb = Embedding::for_graph(g, test::random_matrix(rng, 12, 3));
	const auto layout = metro_layout(g, emb);
	const auto text = export_json(g, &emb, &layout);
	const auto doc = import_json(text);
	CHECK(doc.graph == g);
	REQUIRE(doc.embedding);
	CHECK(*doc.embedding == emb);
	REQUIRE(doc.layout);
	CHECK(doc.layout->positions == layout.positions);
	CHECK(export_json(doc.graph, &*doc.embedding, &*doc.layout) == text);

	const auto bare = import_json(R"({"nodes":[{"id":0},{"id":1},{"id":2}],"edges":[{"a":0,"b":1},{"a":1,"b":2}],"lambda":0.5,"mu":2})");
	REQUIRE(bare.graph.stars().size() == 1);
	CHECK(bare.graph.stars()[0].mu == 2.0);
	CHECK(bare.graph.edges()[0].lambda == 0.5);
	CHECK_FALSE(bare.embedding);

	CHECK_THROWS_AS(import_json("{"), DataError);
	CHECK_THROWS_AS(import_json(R"({"nodes":[{"id":0},{"id":1}],"edges":[]})"), DataError);
}
