#pragma once

#include "epg/dataset.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace epg {

/// Principal axes of a weighted dataset.
struct PcaModel
{
	Eigen::VectorXd mean;
	/// c x m, rows orthonormal, ordered by decreasing explained variance.
	/// Each row is sign-normalized so its largest-magnitude entry is positive.
	Eigen::MatrixXd components;
	/// Weighted (population) variance of the data along each component.
	Eigen::VectorXd explained_variance;
	/// Weighted variance summed over all original coordinates.
	double total_variance = 0.0;

	std::size_t rank() const noexcept { return static_cast<std::size_t>(components.rows()); }
};

/// Top-c right singular directions of the centered, sqrt(weight)-scaled data.
/// Throws DataError unless 1 <= c <= min(N, m).
PcaModel pca_fit(const Dataset& dataset, std::size_t components);

/// Scores of every point; weights and labels are carried over.
Dataset pca_project(const PcaModel& model, const Dataset& dataset);

/// Map scores (N x c) back to the original space.
Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& scores);

} // namespace epg
