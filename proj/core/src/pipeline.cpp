#include "epg/pipeline.hpp"

#include "epg/error.hpp"
#include "epg/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace epg {

void EpochSpec::validate() const
{
	if (!(lambda >= 0.0 && std::isfinite(lambda)) || !(mu >= 0.0 && std::isfinite(mu)))
		throw DataError("epoch moduli must be finite and non-negative");
	if (mode == Mode::robust && !(std::isfinite(r0) && r0 > 0.0))
		throw DataError("robust epoch requires a finite positive r0");
	optimizer().validate();
	if (max_nodes)
		growth().validate();
}

OptimizerConfig EpochSpec::optimizer() const
{
	OptimizerConfig c;
	c.mode = mode;
	c.r0 = mode == Mode::robust ? r0 : kInfinity;
	c.max_iterations = max_iterations;
	c.ridge = ridge;
	return c;
}

GrowthConfig EpochSpec::growth(unsigned jobs) const
{
	GrowthConfig g;
	g.max_nodes = max_nodes.value_or(0);
	g.trial_iterations = trial_iterations;
	g.min_energy_improvement = min_energy_improvement;
	g.optimizer = optimizer();
	g.jobs = jobs;
	return g;
}

namespace {

GraphState principal_segment(const Dataset& dataset, double lambda, double mu)
{
	const PcaModel pca = pca_fit(dataset, 1);
	const Eigen::VectorXd axis = pca.components.row(0).transpose();
	const double s = 0.5 * std::sqrt(pca.explained_variance[0]);
	Eigen::MatrixXd coords(2, static_cast<Eigen::Index>(dataset.dimension()));
	coords.row(0) = (pca.mean - s * axis).transpose();
	coords.row(1) = (pca.mean + s * axis).transpose();
	const std::pair<std::uint32_t, std::uint32_t> edge{0, 1};
	ElasticGraph graph = ElasticGraph::create(2, std::span(&edge, 1), lambda, mu);
	Embedding embedding = Embedding::for_graph(graph, std::move(coords));
	return GraphState{std::move(graph), std::move(embedding)};
}

GraphState local_neighborhood(const Dataset& dataset, const LocalNeighborhood& spec, double lambda, double mu)
{
	const std::size_t n = dataset.size();
	if (spec.k_density < 1 || spec.k_density >= n)
		throw DataError("k_density must lie in [1, N)");
	const Eigen::MatrixXd& x = dataset.points();

	std::vector<std::size_t> candidates(n);
	std::iota(candidates.begin(), candidates.end(), std::size_t{0});
	if (n > spec.max_candidates) {
		std::mt19937_64 rng(spec.seed);
		std::shuffle(candidates.begin(), candidates.end(), rng);
		candidates.resize(spec.max_candidates);
		std::sort(candidates.begin(), candidates.end());
	}

	// Neighbors of i in ascending (distance, index) order, i itself excluded.
	auto nearest = [&](std::size_t i) {
		std::vector<std::pair<double, std::size_t>> d;
		d.reserve(n - 1);
		for (std::size_t j = 0; j < n; ++j)
			if (j != i)
				d.emplace_back((x.row(static_cast<Eigen::Index>(i)) - x.row(static_cast<Eigen::Index>(j))).squaredNorm(), j);
		std::partial_sort(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(spec.k_density), d.end());
		d.resize(spec.k_density);
		return d;
	};

	std::size_t best = candidates.front();
	double best_radius = kInfinity;
	for (std::size_t i : candidates) {
		const double radius = nearest(i).back().first;
		if (radius < best_radius) {
			best_radius = radius;
			best = i;
		}
	}
	Eigen::VectorXd mean = Eigen::VectorXd::Zero(x.cols());
	for (const auto& [dist, j] : nearest(best))
		mean += x.row(static_cast<Eigen::Index>(j)).transpose();
	mean /= static_cast<double>(spec.k_density);

	Eigen::MatrixXd coords(2, x.cols());
	coords.row(0) = x.row(static_cast<Eigen::Index>(best));
	coords.row(1) = mean.transpose();
	const std::pair<std::uint32_t, std::uint32_t> edge{0, 1};
	ElasticGraph graph = ElasticGraph::create(2, std::span(&edge, 1), lambda, mu);
	Embedding embedding = Embedding::for_graph(graph, std::move(coords));
	return GraphState{std::move(graph), std::move(embedding)};
}

} // namespace

GraphState initialize(const Dataset& dataset, const InitStrategy& strategy, double lambda, double mu)
{
	if (dataset.size() < 2)
		throw DataError("initialization needs at least two points");
	if (std::holds_alternative<PrincipalSegment>(strategy))
		return principal_segment(dataset, lambda, mu);
	return local_neighborhood(dataset, std::get<LocalNeighborhood>(strategy), lambda, mu);
}

std::vector<EpochResult> run_epochs(const Dataset& dataset, const std::vector<EpochSpec>& epochs,
                                    const InitStrategy& strategy, unsigned jobs)
{
	if (epochs.empty())
		throw DataError("at least one epoch is required");
	for (const auto& e : epochs)
		e.validate();

	std::vector<EpochResult> results;
	std::optional<GraphState> state;
	for (const EpochSpec& spec : epochs) {
		if (!state)
			state = initialize(dataset, strategy, spec.lambda, spec.mu);
		else
			state = GraphState{state->graph.with_moduli(spec.lambda, spec.mu), state->embedding};

		if (spec.max_nodes) {
			GrowthResult g = grow(dataset, state->graph, state->embedding, spec.growth(jobs));
			results.push_back(EpochResult{spec, g.graph, g.embedding, g.partition, std::move(g.log), std::move(g.trace)});
		} else {
			FitResult f = fit(state->graph, dataset, state->embedding, spec.optimizer());
			results.push_back(EpochResult{spec, state->graph, f.embedding, f.partition, {}, std::move(f.trace)});
		}
		state = GraphState{results.back().graph, results.back().embedding};
	}
	return results;
}

std::vector<EpochSpec> hybrid_preset(double lambda, double mu, double r0, std::size_t coarse_nodes,
                                     std::size_t fine_nodes, double reduction)
{
	if (!(reduction > 0.0) || !std::isfinite(reduction))
		throw DataError("elasticity reduction factor must be positive");
	EpochSpec coarse;
	coarse.mode = Mode::standard;
	coarse.lambda = lambda;
	coarse.mu = mu;
	coarse.max_nodes = coarse_nodes;

	EpochSpec fine = coarse;
	fine.mode = Mode::robust;
	fine.lambda = lambda / reduction;
	fine.mu = mu / reduction;
	fine.r0 = r0;
	fine.max_nodes = std::max(fine_nodes, coarse_nodes);
	return {coarse, fine};
}

} // namespace epg
