#include "epg/energy.hpp"

#include "epg/error.hpp"

#include <cmath>

namespace epg {

namespace {

// Point indices bucketed by owner row, each bucket in ascending point order.
std::vector<std::vector<Eigen::Index>> bucket_by_owner(const Embedding& embedding, const Partition& partition)
{
	std::vector<std::vector<Eigen::Index>> buckets(embedding.size());
	for (std::size_t i = 0; i < partition.size(); ++i)
		buckets[embedding.row_of(partition.owner[i])].push_back(static_cast<Eigen::Index>(i));
	return buckets;
}

long double squared_distance(const Eigen::MatrixXd& x, Eigen::Index i, const Eigen::MatrixXd& nodes, Eigen::Index k)
{
	long double acc = 0.0L;
	for (Eigen::Index j = 0; j < x.cols(); ++j) {
		const long double d = static_cast<long double>(x(i, j)) - nodes(k, j);
		acc += d * d;
	}
	return acc;
}

double approx_impl(const Dataset& dataset, const Embedding& embedding, const Partition& partition, double r0)
{
	require_consistent(dataset, embedding, partition);
	if (embedding.dimension() != dataset.dimension())
		throw DataError("embedding and dataset dimensions differ");
	const long double cap = std::isinf(r0) ? HUGE_VALL : static_cast<long double>(r0) * r0;
	const auto buckets = bucket_by_owner(embedding, partition);
	const Eigen::MatrixXd& x = dataset.points();
	const Eigen::VectorXd& w = dataset.weights();
	long double acc = 0.0L;
	for (std::size_t k = 0; k < buckets.size(); ++k) {
		for (Eigen::Index i : buckets[k]) {
			const long double d = squared_distance(x, i, embedding.coords(), static_cast<Eigen::Index>(k));
			acc += w[i] * (d < cap ? d : cap);
		}
	}
	return static_cast<double>(acc / dataset.total_weight());
}

} // namespace

const char* to_string(Mode mode) noexcept
{
	return mode == Mode::robust ? "robust" : "standard";
}

Mode parse_mode(const std::string& text)
{
	if (text == "standard")
		return Mode::standard;
	if (text == "robust")
		return Mode::robust;
	throw DataError("unknown mode '" + text + "' (expected standard or robust)");
}

GraphEnergy graph_energy(const ElasticGraph& graph, const Embedding& embedding)
{
	embedding.require_matches(graph);
	const Eigen::MatrixXd& pos = embedding.coords();
	const auto m = pos.cols();

	long double edge = 0.0L;
	for (const Edge& e : graph.edges()) {
		const auto ra = static_cast<Eigen::Index>(embedding.row_of(e.a));
		const auto rb = static_cast<Eigen::Index>(embedding.row_of(e.b));
		long double sq = 0.0L;
		for (Eigen::Index j = 0; j < m; ++j) {
			const long double d = static_cast<long double>(pos(ra, j)) - pos(rb, j);
			sq += d * d;
		}
		edge += e.lambda * sq;
	}

	long double star = 0.0L;
	for (const Star& s : graph.stars()) {
		const auto rc = static_cast<Eigen::Index>(embedding.row_of(s.center));
		const long double k = static_cast<long double>(s.leaves.size());
		long double sq = 0.0L;
		for (Eigen::Index j = 0; j < m; ++j) {
			long double mean = 0.0L;
			for (NodeId leaf : s.leaves)
				mean += pos(static_cast<Eigen::Index>(embedding.row_of(leaf)), j);
			const long double d = pos(rc, j) - mean / k;
			sq += d * d;
		}
		star += s.mu * sq;
	}
	return GraphEnergy{static_cast<double>(edge), static_cast<double>(star)};
}

double approx_energy(const Dataset& dataset, const Embedding& embedding, const Partition& partition)
{
	return approx_impl(dataset, embedding, partition, kInfinity);
}

double robust_approx_energy(const Dataset& dataset, const Embedding& embedding, const Partition& partition,
                            double r0)
{
	if (std::isnan(r0) || r0 <= 0.0)
		throw DataError("robustness radius must be positive");
	return approx_impl(dataset, embedding, partition, r0);
}

EnergyReport total_energy(const ElasticGraph& graph, const Embedding& embedding, const Dataset& dataset,
                          const Partition& partition, Mode mode, double r0)
{
	EnergyReport report;
	const GraphEnergy g = graph_energy(graph, embedding);
	report.edge_energy = g.edge;
	report.star_energy = g.star;
	report.robust_mode = mode == Mode::robust;
	report.r0 = report.robust_mode ? r0 : kInfinity;
	report.approx_energy = report.robust_mode ? robust_approx_energy(dataset, embedding, partition, r0)
	                                          : approx_energy(dataset, embedding, partition);
	report.total = report.edge_energy + report.star_energy + report.approx_energy;
	return report;
}

} // namespace epg
