#pragma once

#include <Eigen/Core>

namespace gspace::analytics {

/// Above this many rows classical_mds switches from the n x n distance route
/// to the equivalent d x d covariance route.
inline constexpr Eigen::Index kDirectMdsLimit = 600;

/// Columns z-scored (constant columns left at zero), then the top `dims`
/// eigenpairs of the double-centered squared-distance matrix give
/// coordinates v * sqrt(max(lambda, 0)). Each output axis is signed so its
/// largest-magnitude coordinate is positive.
/// Throws ValidationError unless rows >= dims + 1 and dims >= 1.
Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& x, int dims = 2);
Eigen::MatrixXd classical_mds_direct(const Eigen::MatrixXd& x, int dims = 2);
/// Same embedding through the eigendecomposition of Z^T Z, which shares the
/// nonzero spectrum of the Gram matrix Z Z^T.
Eigen::MatrixXd classical_mds_gram(const Eigen::MatrixXd& x, int dims = 2);

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

}  // namespace gspace::analytics
