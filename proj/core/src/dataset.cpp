#include "epg/dataset.hpp"

#include "epg/error.hpp"

#include <cmath>

namespace epg {

Dataset::Dataset(Eigen::MatrixXd points, Eigen::VectorXd weights, std::vector<std::string> labels)
	: points_(std::move(points))
	, weights_(std::move(weights))
	, labels_(std::move(labels))
{
	const auto n = points_.rows();
	if (n < 1)
		throw DataError("dataset must contain at least one point");
	if (points_.cols() < 1)
		throw DataError("dataset points must have at least one coordinate");
	if (!points_.allFinite()) {
		for (Eigen::Index i = 0; i < n; ++i)
			for (Eigen::Index j = 0; j < points_.cols(); ++j)
				if (!std::isfinite(points_(i, j)))
					throw DataError("non-finite coordinate at point " + std::to_string(i) +
					                ", column " + std::to_string(j));
	}
	if (weights_.size() == 0)
		weights_ = Eigen::VectorXd::Ones(n);
	if (weights_.size() != n)
		throw DataError("weight count " + std::to_string(weights_.size()) +
		                " does not match point count " + std::to_string(n));
	long double sum = 0.0L;
	for (Eigen::Index i = 0; i < n; ++i) {
		if (!std::isfinite(weights_[i]) || weights_[i] < 0.0)
			throw DataError("weight of point " + std::to_string(i) + " must be finite and non-negative");
		sum += weights_[i];
	}
	if (!(sum > 0.0L))
		throw DataError("sum of weights must be positive");
	total_weight_ = static_cast<double>(sum);
	if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != n)
		throw DataError("label count " + std::to_string(labels_.size()) +
		                " does not match point count " + std::to_string(n));
}

bool Dataset::unit_weights() const noexcept
{
	return (weights_.array() == 1.0).all();
}

Dataset Dataset::with_points(const Eigen::MatrixXd& extra, const Eigen::VectorXd& extra_weights,
                             const std::vector<std::string>& extra_labels) const
{
	if (extra.cols() != points_.cols())
		throw DataError("appended points have the wrong dimension");
	Eigen::MatrixXd p(points_.rows() + extra.rows(), points_.cols());
	p << points_, extra;
	Eigen::VectorXd w(weights_.size() + extra_weights.size());
	w << weights_, extra_weights;
	std::vector<std::string> l = labels_;
	if (has_labels()) {
		if (static_cast<Eigen::Index>(extra_labels.size()) != extra.rows())
			throw DataError("appended points need labels");
		l.insert(l.end(), extra_labels.begin(), extra_labels.end());
	}
	return Dataset(std::move(p), std::move(w), std::move(l));
}

} // namespace epg
