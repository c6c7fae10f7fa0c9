#include "gspace/analytics/mds.hpp"

#include "gspace/errors.hpp"
#include "gspace/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace gspace::analytics {

namespace {

void check(const Eigen::MatrixXd& x, int dims) {
  if (dims < 1) throw ValidationError("MDS needs at least one output dimension");
  if (x.rows() < dims + 1) throw ValidationError("MDS needs at least dims + 1 rows");
}

void orient_axes(Eigen::MatrixXd& coords) {
  for (Eigen::Index j = 0; j < coords.cols(); ++j) {
    Eigen::Index at = 0;
    coords.col(j).cwiseAbs().maxCoeff(&at);
    if (coords(at, j) < 0) coords.col(j) *= -1.0;
  }
}

}  // namespace

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd z = x.rowwise() - x.colwise().mean();
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    const double sd = std::sqrt(z.col(j).squaredNorm() / static_cast<double>(z.rows()));
    if (sd > 0.0) z.col(j) /= sd;
    else z.col(j).setZero();
  }
  return z;
}

Eigen::MatrixXd classical_mds_direct(const Eigen::MatrixXd& x, int dims) {
  check(x, dims);
  const Eigen::MatrixXd z = standardize_columns(x);
  const Eigen::Index n = z.rows();
  const Eigen::VectorXd norms = z.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (norms.replicate(1, n) + norms.transpose().replicate(n, 1) - 2.0 * z * z.transpose())
                           .cwiseMax(0.0);
  // B = -1/2 J D2 J with J = I - 11^T / n.
  d2 = d2.rowwise() - d2.colwise().mean();
  d2 = d2.colwise() - d2.rowwise().mean();
  Eigen::MatrixXd b = -0.5 * d2;
  b = 0.5 * (b + b.transpose()).eval();
  const auto eig = numerics::symmetric_eigen(b);
  Eigen::MatrixXd coords(n, dims);
  for (int k = 0; k < dims; ++k) coords.col(k) = eig.eigenvectors.col(k) * std::sqrt(std::max(eig.eigenvalues(k), 0.0));
  orient_axes(coords);
  return coords;
}

Eigen::MatrixXd classical_mds_gram(const Eigen::MatrixXd& x, int dims) {
  check(x, dims);
  const Eigen::MatrixXd z = standardize_columns(x);
  if (dims > z.cols()) throw ValidationError("covariance route supports at most one dimension per feature");
  Eigen::MatrixXd c = z.transpose() * z;
  c = 0.5 * (c + c.transpose()).eval();
  const auto eig = numerics::symmetric_eigen(c);
  // Z v_k has norm sqrt(lambda_k) and is the matching Gram eigenvector scaled by it.
  Eigen::MatrixXd coords = z * eig.eigenvectors.leftCols(dims);
  for (int k = 0; k < dims; ++k)
    if (!(eig.eigenvalues(k) > 0.0)) coords.col(k).setZero();
  orient_axes(coords);
  return coords;
}

Eigen::MatrixXd classical_mds(const Eigen::MatrixXd& x, int dims) {
  return x.rows() <= kDirectMdsLimit ? classical_mds_direct(x, dims) : classical_mds_gram(x, dims);
}

}  // namespace gspace::analytics
