#include "epg/energy.hpp"
#include "epg/error.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace epg;

namespace {

using Pairs = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

// Direct evaluation on plain vectors, independent of the library's
// row lookup and accumulation.
double oracle_graph_energy(const std::vector<std::vector<double>>& pos, const Pairs& edges, double lambda,
                           const std::vector<std::pair<int, std::vector<int>>>& stars, double mu)
{
	double total = 0.0;
	for (auto [a, b] : edges) {
		for (std::size_t j = 0; j < pos[a].size(); ++j)
			total += lambda * (pos[a][j] - pos[b][j]) * (pos[a][j] - pos[b][j]);
	}
	for (const auto& [c, leaves] : stars) {
		for (std::size_t j = 0; j < pos[c].size(); ++j) {
			double mean = 0.0;
			for (int l : leaves)
				mean += pos[l][j];
			mean /= static_cast<double>(leaves.size());
			total += mu * (pos[c][j] - mean) * (pos[c][j] - mean);
		}
	}
	return total;
}

Embedding embed(const ElasticGraph& g, Eigen::MatrixXd coords)
{
	return Embedding::for_graph(g, std::move(coords));
}

} // namespace

TEST_CASE("graph_energy examples")
{
	const auto path = ElasticGraph::create(3, Pairs{{0, 1}, {1, 2}}, 1.0, 1.0);

	SUBCASE("coincident nodes")
	{
		const auto e = graph_energy(path, embed(path, Eigen::MatrixXd::Constant(3, 2, 0.7)));
		CHECK(e.edge == 0.0);
		CHECK(e.star == 0.0);
	}
	SUBCASE("collinear path")
	{
		Eigen::MatrixXd p(3, 2);
		p << 0, 0, 1, 0, 2, 0;
		const double expected = oracle_graph_energy({{0, 0}, {1, 0}, {2, 0}}, {{0, 1}, {1, 2}}, 1.0, {{1, {0, 2}}}, 1.0);
		REQUIRE(expected == doctest::Approx(2.0));
		const auto e = graph_energy(path, embed(path, p));
		CHECK(e.edge == doctest::Approx(2.0).epsilon(1e-15));
		CHECK(e.star == 0.0);
	}
	SUBCASE("rotation invariance")
	{
		std::mt19937_64 rng(11);
		const Eigen::MatrixXd p = test::random_matrix(rng, 3, 3);
		const Eigen::MatrixXd q = test::random_rotation(rng, 3);
		const auto e0 = graph_energy(path, embed(path, p));
		const auto e1 = graph_energy(path, embed(path, p * q.transpose()));
		CHECK(e1.edge == doctest::Approx(e0.edge).epsilon(1e-12));
		CHECK(e1.star == doctest::Approx(e0.star).epsilon(1e-12));
	}
	SUBCASE("missing node position")
	{
		Embedding partial({NodeId{0}, NodeId{1}}, Eigen::MatrixXd::Zero(2, 2));
		CHECK_THROWS_WITH_AS(graph_energy(path, partial), doctest::Contains("node 2"), DataError);
	}
}

TEST_CASE("graph_energy agrees with the oracle on random trees")
{
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 30; ++trial) {
		const std::size_t n = 2 + rng() % 12;
		const double lambda = test::log_uniform(rng, 1e-3, 10.0);
		const double mu = test::log_uniform(rng, 1e-3, 10.0);
		const auto g = test::random_tree(rng, n, lambda, mu);
		const Eigen::MatrixXd p = test::random_matrix(rng, static_cast<Eigen::Index>(n), 3);
		std::vector<std::vector<double>> pos(n);
		for (std::size_t i = 0; i < n; ++i)
			pos[i] = {p(i, 0), p(i, 1), p(i, 2)};
		Pairs edges;
		for (const Edge& e : g.edges())
			edges.emplace_back(e.a.value, e.b.value);
		std::vector<std::pair<int, std::vector<int>>> stars;
		for (const Star& s : g.stars()) {
			std::vector<int> leaves;
			for (NodeId l : s.leaves)
				leaves.push_back(static_cast<int>(l.value));
			stars.emplace_back(static_cast<int>(s.center.value), leaves);
		}
		const auto e = graph_energy(g, embed(g, p));
		const double oracle = oracle_graph_energy(pos, edges, lambda, stars, mu);
		CHECK(e.edge + e.star == doctest::Approx(oracle).epsilon(1e-12));
	}
}

TEST_CASE("star term vanishes exactly at the leaf mean")
{
	const auto star = ElasticGraph::create(4, Pairs{{0, 1}, {0, 2}, {0, 3}}, 1.0, 1.0);
	Eigen::MatrixXd p(4, 2);
	p << 1, 1, 0, 0, 3, 0, 0, 3;
	CHECK(graph_energy(star, embed(star, p)).star == 0.0);
	p(0, 0) += 0.5;
	CHECK(graph_energy(star, embed(star, p)).star == doctest::Approx(0.25));
}

TEST_CASE("approximation energies")
{
	const auto single = ElasticGraph::create(1, Pairs{}, 1.0, 1.0);
	const Embedding origin = embed(single, Eigen::MatrixXd::Zero(1, 2));

	SUBCASE("coincident point")
	{
		Dataset d(Eigen::MatrixXd::Zero(1, 2));
		CHECK(approx_energy(d, origin, build_partition(d, origin)) == 0.0);
	}
	SUBCASE("two symmetric points")
	{
		Eigen::MatrixXd x(2, 2);
		x << 1, 0, -1, 0;
		Dataset d(x);
		const auto part = build_partition(d, origin);
		CHECK(approx_energy(d, origin, part) == doctest::Approx(1.0));
		Dataset doubled(x, Eigen::VectorXd::Constant(2, 2.0));
		CHECK(approx_energy(doubled, origin, part) == approx_energy(d, origin, part));
	}
	SUBCASE("trimmed point")
	{
		Eigen::MatrixXd x(1, 2);
		x << 3, 0;
		Dataset d(x);
		const auto part = build_partition(d, origin, 1.0);
		CHECK(robust_approx_energy(d, origin, part, 1.0) == doctest::Approx(1.0));
		CHECK(robust_approx_energy(d, origin, part, 10.0) == approx_energy(d, origin, part));
		CHECK(robust_approx_energy(d, origin, part, kInfinity) == approx_energy(d, origin, part));
		CHECK_THROWS_AS(robust_approx_energy(d, origin, part, 0.0), DataError);
		CHECK_THROWS_AS(robust_approx_energy(d, origin, part, -1.0), DataError);
	}
	SUBCASE("partition mismatch")
	{
		Dataset d(Eigen::MatrixXd::Zero(3, 2));
		Partition bad;
		bad.owner = {NodeId{0}};
		bad.close = {true};
		CHECK_THROWS_AS(approx_energy(d, origin, bad), DataError);
		bad.owner = {NodeId{4}, NodeId{0}, NodeId{0}};
		bad.close = {true, true, true};
		CHECK_THROWS_AS(approx_energy(d, origin, bad), DataError);
	}
}

TEST_CASE("robust energy properties on random inputs")
{
	std::mt19937_64 rng(17);
	for (int trial = 0; trial < 40; ++trial) {
		const auto m = static_cast<Eigen::Index>(2 + rng() % 3);
		const auto n_nodes = static_cast<Eigen::Index>(1 + rng() % 6);
		const auto g = test::random_tree(rng, static_cast<std::size_t>(n_nodes), 0.1, 0.1);
		const Embedding emb = embed(g, test::random_matrix(rng, n_nodes, m));
		const auto n = static_cast<Eigen::Index>(5 + rng() % 80);
		Dataset d(test::random_matrix(rng, n, m, 2.0), test::random_weights(rng, n));
		const auto part = build_partition(d, emb);
		const double full = approx_energy(d, emb, part);

		double previous = 0.0;
		for (double r0 : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 100.0}) {
			const double trimmed = robust_approx_energy(d, emb, part, r0);
			CHECK(trimmed <= r0 * r0 * (1 + 1e-15));
			CHECK(trimmed <= full * (1 + 1e-15));
			CHECK(trimmed >= previous);
			previous = trimmed;
		}
		CHECK(previous == doctest::Approx(full).epsilon(1e-14));

		// Rigid motion of data and nodes together.
		const Eigen::MatrixXd q = test::random_rotation(rng, m);
		const Eigen::RowVectorXd shift = test::random_matrix(rng, 1, m, 5.0);
		Dataset moved((d.points() * q.transpose()).rowwise() + shift, d.weights());
		const Embedding moved_emb = embed(g, (emb.coords() * q.transpose()).rowwise() + shift);
		const auto moved_part = build_partition(moved, moved_emb, 1.0);
		const auto r_std = total_energy(g, emb, d, part, Mode::robust, 1.0);
		const auto r_mov = total_energy(g, moved_emb, moved, moved_part, Mode::robust, 1.0);
		CHECK(r_mov.approx_energy == doctest::Approx(r_std.approx_energy).epsilon(1e-12));
		CHECK(r_mov.edge_energy == doctest::Approx(r_std.edge_energy).epsilon(1e-12));
		CHECK(r_mov.star_energy == doctest::Approx(r_std.star_energy).epsilon(1e-12));
	}
}

TEST_CASE("trimmed per-point penalty: quadratic then flat, non-decreasing")
{
	const double r0_sq = 4.0;
	double previous = -1.0;
	for (double d = 0.0; d <= 5.0; d += 0.01) {
		const double v = trimmed_square(d * d, r0_sq);
		CHECK(v >= previous);
		CHECK(v == (d * d < r0_sq ? d * d : r0_sq));
		previous = v;
	}
	CHECK(trimmed_square(4.0, 4.0) == 4.0); // continuous at the boundary
}

TEST_CASE("total_energy decomposition")
{
	std::mt19937_64 rng(23);
	const auto g = test::random_tree(rng, 6, 0.0, 0.0);
	const Embedding emb = embed(g, test::random_matrix(rng, 6, 2));
	Dataset d(test::random_matrix(rng, 40, 2));
	const auto part = build_partition(d, emb);

	const auto degenerate = total_energy(g, emb, d, part, Mode::standard);
	CHECK(degenerate.total == approx_energy(d, emb, part));

	const auto g2 = g.with_moduli(0.3, 0.7);
	const auto report = total_energy(g2, emb, d, part, Mode::standard);
	const auto ge = graph_energy(g2, emb);
	CHECK(report.edge_energy == ge.edge);
	CHECK(report.star_energy == ge.star);
	CHECK(report.approx_energy == approx_energy(d, emb, part));
	CHECK(report.total == report.edge_energy + report.star_energy + report.approx_energy);
	CHECK_FALSE(report.robust_mode);

	const auto robust_inf = total_energy(g2, emb, d, part, Mode::robust, kInfinity);
	CHECK(robust_inf.total == report.total);
	const auto robust = total_energy(g2, emb, d, build_partition(d, emb, 0.5), Mode::robust, 0.5);
	CHECK(robust.robust_mode);
	CHECK(robust.approx_energy <= 0.25);
}
