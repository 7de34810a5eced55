#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <string>
#include <vector>

namespace epg {

/// N weighted points in R^m with optional categorical labels.
///
/// Invariants (checked on construction): N >= 1, all coordinates finite,
/// weights finite and non-negative with a positive sum, labels empty or of
/// length N.
class Dataset
{
public:
	/// Empty `weights` means unit weights; empty `labels` means unlabeled.
	explicit Dataset(Eigen::MatrixXd points, Eigen::VectorXd weights = {},
	                 std::vector<std::string> labels = {});

	const Eigen::MatrixXd& points() const noexcept { return points_; }
	const Eigen::VectorXd& weights() const noexcept { return weights_; }
	const std::vector<std::string>& labels() const noexcept { return labels_; }
	bool has_labels() const noexcept { return !labels_.empty(); }

	std::size_t size() const noexcept { return static_cast<std::size_t>(points_.rows()); }
	std::size_t dimension() const noexcept { return static_cast<std::size_t>(points_.cols()); }
	double total_weight() const noexcept { return total_weight_; }
	bool unit_weights() const noexcept;

	/// Copy with `extra` appended (weights and labels must match presence).
	Dataset with_points(const Eigen::MatrixXd& extra, const Eigen::VectorXd& extra_weights,
	                    const std::vector<std::string>& extra_labels = {}) const;

private:
	Eigen::MatrixXd points_;
	Eigen::VectorXd weights_;
	std::vector<std::string> labels_;
	double total_weight_ = 0.0;
};

} // namespace epg
