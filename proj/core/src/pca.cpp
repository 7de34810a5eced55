#include "epg/pca.hpp"

#include "epg/error.hpp"

#include <Eigen/SVD>

#include <algorithm>

namespace epg {

PcaModel pca_fit(const Dataset& dataset, std::size_t components)
{
	const auto n = static_cast<std::size_t>(dataset.size());
	const auto m = dataset.dimension();
	if (components < 1 || components > std::min(n, m))
		throw DataError("component count " + std::to_string(components) + " must be between 1 and min(N, m) = " +
		                std::to_string(std::min(n, m)));

	const Eigen::VectorXd share = dataset.weights() / dataset.total_weight();
	PcaModel model;
	model.mean = dataset.points().transpose() * share;
	Eigen::MatrixXd centered = dataset.points().rowwise() - model.mean.transpose();
	centered = share.cwiseSqrt().asDiagonal() * centered;
	model.total_variance = centered.squaredNorm();

	Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
	const auto c = static_cast<Eigen::Index>(components);
	model.components = svd.matrixV().leftCols(c).transpose();
	model.explained_variance = svd.singularValues().head(c).array().square();

	for (Eigen::Index k = 0; k < c; ++k) {
		Eigen::Index pivot = 0;
		model.components.row(k).cwiseAbs().maxCoeff(&pivot);
		if (model.components(k, pivot) < 0.0)
			model.components.row(k) *= -1.0;
	}
	return model;
}

Dataset pca_project(const PcaModel& model, const Dataset& dataset)
{
	if (static_cast<Eigen::Index>(dataset.dimension()) != model.mean.size())
		throw DataError("dataset dimension " + std::to_string(dataset.dimension()) +
		                " does not match the PCA model dimension " + std::to_string(model.mean.size()));
	Eigen::MatrixXd scores = (dataset.points().rowwise() - model.mean.transpose()) * model.components.transpose();
	return Dataset(std::move(scores), dataset.weights(), dataset.labels());
}

Eigen::MatrixXd pca_reconstruct(const PcaModel& model, const Eigen::MatrixXd& scores)
{
	if (scores.cols() != model.components.rows())
		throw DataError("score matrix has the wrong number of components");
	return (scores * model.components).rowwise() + model.mean.transpose();
}

} // namespace epg
