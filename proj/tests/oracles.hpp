#pragma once

// Independent reference computations used by unit and acceptance tests.
// Nothing here calls into the energy or optimizer code; the library types
// are only read for their structure.

#include "epg/dataset.hpp"
#include "epg/embedding.hpp"
#include "epg/graph.hpp"
#include "epg/optimizer.hpp"
#include "epg/partition.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <vector>

namespace epg::oracle {

struct LloydStep
{
	std::vector<int> owner;
	std::size_t reassigned = 0;
	double objective = 0.0; // weighted mean squared distance to owner
};

inline std::vector<int> nearest(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centers)
{
	std::vector<int> owner(static_cast<std::size_t>(x.rows()));
	for (Eigen::Index i = 0; i < x.rows(); ++i) {
		int best = 0;
		double best_d = std::numeric_limits<double>::infinity();
		for (Eigen::Index k = 0; k < centers.rows(); ++k) {
			const double d = (x.row(i) - centers.row(k)).squaredNorm();
			if (d < best_d) {
				best_d = d;
				best = static_cast<int>(k);
			}
		}
		owner[static_cast<std::size_t>(i)] = best;
	}
	return owner;
}

inline double objective(const Eigen::MatrixXd& x, const Eigen::VectorXd& w, const Eigen::MatrixXd& centers,
                        const std::vector<int>& owner)
{
	double acc = 0.0;
	for (Eigen::Index i = 0; i < x.rows(); ++i)
		acc += w[i] * (x.row(i) - centers.row(owner[static_cast<std::size_t>(i)])).squaredNorm();
	return acc / w.sum();
}

/// Weighted Lloyd iteration; empty clusters keep their center. Runs until
/// the assignment is stable or max_iterations is reached, recording one
/// step per center update.
inline std::vector<LloydStep> lloyd(const Eigen::MatrixXd& x, const Eigen::VectorXd& w, Eigen::MatrixXd& centers,
                                    int max_iterations)
{
	std::vector<LloydStep> steps;
	std::vector<int> owner = nearest(x, centers);
	for (int it = 0; it < max_iterations; ++it) {
		Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(centers.rows(), centers.cols());
		Eigen::VectorXd mass = Eigen::VectorXd::Zero(centers.rows());
		for (Eigen::Index i = 0; i < x.rows(); ++i) {
			sums.row(owner[static_cast<std::size_t>(i)]) += w[i] * x.row(i);
			mass[owner[static_cast<std::size_t>(i)]] += w[i];
		}
		for (Eigen::Index k = 0; k < centers.rows(); ++k)
			if (mass[k] > 0.0)
				centers.row(k) = sums.row(k) / mass[k];
		LloydStep step;
		step.owner = nearest(x, centers);
		for (std::size_t i = 0; i < owner.size(); ++i)
			step.reassigned += step.owner[i] != owner[i] ? 1 : 0;
		step.objective = objective(x, w, centers, step.owner);
		owner = step.owner;
		steps.push_back(step);
		if (step.reassigned == 0)
			break;
	}
	return steps;
}

/// Quadratic surrogate for a frozen partition, written from the energy
/// definition: close points pull their owner, far points add r0^2,
/// edges and stars add their elastic terms, ridge adds a proximal term.
struct Surrogate
{
	Eigen::MatrixXd x;
	Eigen::VectorXd w;
	std::vector<int> owner_row;
	std::vector<bool> close;
	double r0_sq = 0.0;
	std::vector<std::pair<int, int>> edges;
	std::vector<double> lambdas;
	std::vector<std::pair<int, std::vector<int>>> stars;
	std::vector<double> mus;
	double ridge = 0.0;
	Eigen::MatrixXd previous;

	double operator()(const Eigen::MatrixXd& p) const
	{
		double data = 0.0;
		for (Eigen::Index i = 0; i < x.rows(); ++i) {
			const auto k = owner_row[static_cast<std::size_t>(i)];
			data += w[i] * (close[static_cast<std::size_t>(i)] ? (x.row(i) - p.row(k)).squaredNorm() : r0_sq);
		}
		double value = data / w.sum();
		for (std::size_t e = 0; e < edges.size(); ++e)
			value += lambdas[e] * (p.row(edges[e].first) - p.row(edges[e].second)).squaredNorm();
		for (std::size_t s = 0; s < stars.size(); ++s) {
			Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(p.cols());
			for (int l : stars[s].second)
				mean += p.row(l);
			mean /= static_cast<double>(stars[s].second.size());
			value += mus[s] * (p.row(stars[s].first) - mean).squaredNorm();
		}
		value += ridge * (p - previous).squaredNorm();
		return value;
	}

	/// Central finite-difference gradient.
	Eigen::MatrixXd gradient(const Eigen::MatrixXd& p, double step) const
	{
		Eigen::MatrixXd g(p.rows(), p.cols());
		for (Eigen::Index i = 0; i < p.rows(); ++i) {
			for (Eigen::Index j = 0; j < p.cols(); ++j) {
				Eigen::MatrixXd up = p, down = p;
				up(i, j) += step;
				down(i, j) -= step;
				g(i, j) = ((*this)(up) - (*this)(down)) / (2.0 * step);
			}
		}
		return g;
	}
};

inline Surrogate surrogate_for(const ElasticGraph& g, const Dataset& d, const Partition& part,
                               const OptimizerConfig& config, const Embedding& previous)
{
	Surrogate s;
	s.x = d.points();
	s.w = d.weights();
	for (NodeId id : part.owner)
		s.owner_row.push_back(static_cast<int>(g.index_of(id)));
	s.close = part.close;
	s.r0_sq = std::isinf(part.r0) ? 0.0 : part.r0 * part.r0;
	for (const Edge& e : g.edges()) {
		s.edges.emplace_back(static_cast<int>(g.index_of(e.a)), static_cast<int>(g.index_of(e.b)));
		s.lambdas.push_back(e.lambda);
	}
	for (const Star& st : g.stars()) {
		std::vector<int> leaves;
		for (NodeId l : st.leaves)
			leaves.push_back(static_cast<int>(g.index_of(l)));
		s.stars.emplace_back(static_cast<int>(g.index_of(st.center)), leaves);
		s.mus.push_back(st.mu);
	}
	s.ridge = config.ridge;
	s.previous = previous.coords();
	return s;
}

} // namespace epg::oracle
