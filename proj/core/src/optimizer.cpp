#include "epg/optimizer.hpp"

#include "epg/error.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>

namespace epg {

void OptimizerConfig::validate() const
{
	if (mode == Mode::robust && !(std::isfinite(r0) && r0 > 0.0))
		throw DataError("robust mode requires a finite positive r0");
	if (max_iterations < 1)
		throw DataError("max_iterations must be positive");
	if (!(energy_tolerance >= 0.0))
		throw DataError("energy_tolerance must be non-negative");
	if (!(ridge >= 0.0) || !std::isfinite(ridge))
		throw DataError("ridge must be finite and non-negative");
}

Embedding solve_positions(const ElasticGraph& graph, const Dataset& dataset, const Partition& partition,
                          const OptimizerConfig& config, const Embedding& previous)
{
	config.validate();
	previous.require_matches(graph);
	require_consistent(dataset, previous, partition);
	if (previous.dimension() != dataset.dimension())
		throw DataError("embedding and dataset dimensions differ");

	const auto n = static_cast<Eigen::Index>(graph.node_count());
	const auto m = static_cast<Eigen::Index>(dataset.dimension());
	const double inv_w = 1.0 / dataset.total_weight();
	const Eigen::MatrixXd& x = dataset.points();
	const Eigen::VectorXd& w = dataset.weights();

	// Data term over close points only.
	Eigen::VectorXd node_weight = Eigen::VectorXd::Zero(n);
	Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, m);
	for (std::size_t i = 0; i < partition.size(); ++i) {
		if (!partition.close[i])
			continue;
		const auto r = static_cast<Eigen::Index>(previous.row_of(partition.owner[i]));
		const auto ii = static_cast<Eigen::Index>(i);
		node_weight[r] += w[ii];
		rhs.row(r) += w[ii] * x.row(ii);
	}
	node_weight *= inv_w;
	rhs *= inv_w;

	std::vector<Eigen::Triplet<double>> triplets;
	triplets.reserve(static_cast<std::size_t>(n) * 3 + graph.edge_count() * 4);
	std::vector<bool> anchored(static_cast<std::size_t>(n), false);
	for (Eigen::Index r = 0; r < n; ++r) {
		const double d = node_weight[r] + config.ridge;
		if (d > 0.0) {
			triplets.emplace_back(r, r, d);
			anchored[static_cast<std::size_t>(r)] = true;
		}
	}
	for (const Edge& e : graph.edges()) {
		if (e.lambda == 0.0)
			continue;
		const auto a = static_cast<Eigen::Index>(previous.row_of(e.a));
		const auto b = static_cast<Eigen::Index>(previous.row_of(e.b));
		triplets.emplace_back(a, a, e.lambda);
		triplets.emplace_back(b, b, e.lambda);
		triplets.emplace_back(a, b, -e.lambda);
		triplets.emplace_back(b, a, -e.lambda);
		anchored[static_cast<std::size_t>(a)] = anchored[static_cast<std::size_t>(b)] = true;
	}
	for (const Star& s : graph.stars()) {
		if (s.mu == 0.0)
			continue;
		// mu * v v^T with v = e_center - (1/k) sum e_leaf
		std::vector<std::pair<Eigen::Index, double>> v;
		v.emplace_back(static_cast<Eigen::Index>(previous.row_of(s.center)), 1.0);
		const double inv_k = 1.0 / static_cast<double>(s.leaves.size());
		for (NodeId leaf : s.leaves)
			v.emplace_back(static_cast<Eigen::Index>(previous.row_of(leaf)), -inv_k);
		for (const auto& [ri, vi] : v) {
			anchored[static_cast<std::size_t>(ri)] = true;
			for (const auto& [rj, vj] : v)
				triplets.emplace_back(ri, rj, s.mu * vi * vj);
		}
	}
	for (Eigen::Index r = 0; r < n; ++r) {
		if (!anchored[static_cast<std::size_t>(r)])
			throw NumericalError("node " + to_string(graph.nodes()[static_cast<std::size_t>(r)]) +
			                     " is unconstrained (no close data and zero elastic moduli); use ridge > 0");
	}
	rhs += config.ridge * previous.coords();

	Eigen::SparseMatrix<double> system(n, n);
	system.setFromTriplets(triplets.begin(), triplets.end());

	Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(system);
	if (solver.info() != Eigen::Success)
		throw NumericalError("node placement system is singular; use ridge > 0");
	const Eigen::VectorXd pivots = solver.vectorD();
	const double max_pivot = pivots.cwiseAbs().maxCoeff();
	if (!(pivots.minCoeff() > 1e-14 * max_pivot))
		throw NumericalError("node placement system is singular or indefinite; use ridge > 0");

	Eigen::MatrixXd solution = solver.solve(rhs);
	// One step of iterative refinement.
	const Eigen::MatrixXd residual = rhs - system * solution;
	solution += solver.solve(residual);
	if (!solution.allFinite())
		throw NumericalError("node placement produced non-finite coordinates");
	return Embedding(previous.ids(), std::move(solution));
}

FitResult fit(const ElasticGraph& graph, const Dataset& dataset, const Embedding& initial,
              const OptimizerConfig& config)
{
	config.validate();
	initial.require_matches(graph);
	const double r0 = config.effective_r0();

	FitResult result{initial, build_partition(dataset, initial, r0), {}};
	result.trace.initial = total_energy(graph, initial, dataset, result.partition, config.mode, r0);
	double previous_total = result.trace.initial.total;

	for (int it = 0; it < config.max_iterations; ++it) {
		Embedding next_embedding = solve_positions(graph, dataset, result.partition, config, result.embedding);
		Partition next_partition = build_partition(dataset, next_embedding, r0);
		IterationRecord record;
		record.points_reassigned = next_partition.differences(result.partition);
		record.energy = total_energy(graph, next_embedding, dataset, next_partition, config.mode, r0);
		result.embedding = std::move(next_embedding);
		result.partition = std::move(next_partition);
		result.trace.iterations.push_back(record);

		if (record.points_reassigned == 0) {
			result.trace.converged = true;
			break;
		}
		if (config.energy_tolerance > 0.0 &&
		    previous_total - record.energy.total < config.energy_tolerance * std::abs(previous_total)) {
			result.trace.converged = true;
			break;
		}
		previous_total = record.energy.total;
	}
	return result;
}

} // namespace epg
