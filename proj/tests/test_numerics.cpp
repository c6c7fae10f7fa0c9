#include "gspace/errors.hpp"
#include "gspace/generators.hpp"
#include "gspace/numerics.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

using namespace gspace;
using namespace gspace::numerics;
using Catch::Approx;

namespace {

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
  return m;
}

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace

TEST_CASE("symmetric_eigen small cases") {
  const auto id = symmetric_eigen(Eigen::MatrixXd::Identity(3, 3));
  CHECK(id.eigenvalues.isApprox(Eigen::Vector3d::Ones()));

  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  const auto s = symmetric_eigen(swap);
  CHECK(s.eigenvalues(0) == Approx(1.0));
  CHECK(s.eigenvalues(1) == Approx(-1.0));

  const auto k3 = symmetric_eigen(adjacency_matrix<double>(complete_graph(3)));
  CHECK(k3.eigenvalues(0) == Approx(2.0));
  CHECK(k3.eigenvalues(1) == Approx(-1.0));
  CHECK(k3.eigenvalues(2) == Approx(-1.0));

  Eigen::Matrix2d lopsided;
  lopsided << 0, 1, 0, 0;
  CHECK_THROWS_AS(symmetric_eigen(lopsided), ValidationError);
}

TEST_CASE("symmetric_eigen reconstructs random matrices up to order 100") {
  Rng rng(42);
  for (int n : {1, 2, 5, 17, 40, 100}) {
    const Eigen::MatrixXd m = random_symmetric(n, rng);
    const auto e = symmetric_eigen(m);
    const double scale = inf_norm(m);
    const Eigen::MatrixXd rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
    CHECK(inf_norm(rec - m) <= 1e-8 * scale);
    CHECK((e.eigenvectors.transpose() * e.eigenvectors - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <=
          1e-8);
    for (int k = 0; k < n; ++k)
      CHECK((m * e.eigenvectors.col(k) - e.eigenvalues(k) * e.eigenvectors.col(k)).cwiseAbs().maxCoeff() <=
            1e-8 * scale);
    CHECK(std::abs(m.trace() - e.eigenvalues.sum()) <= 1e-8 * std::max(1.0, std::abs(m.trace())));
    for (int k = 1; k < n; ++k) CHECK(e.eigenvalues(k - 1) >= e.eigenvalues(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m);
    CHECK((symmetric_eigenvalues(m).reverse() - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-9 * scale);
  }
}

TEST_CASE("dominant_eigenpair") {
  const auto k4 = dominant_eigenpair(adjacency_matrix<double>(complete_graph(4)));
  CHECK(k4.value == Approx(3.0).epsilon(1e-10));
  for (int i = 0; i < 4; ++i) CHECK(k4.vector(i) == Approx(0.5).epsilon(1e-8));

  const auto s4 = dominant_eigenpair(adjacency_matrix<double>(star_graph(4)));
  CHECK(s4.value == Approx(std::sqrt(3.0)).epsilon(1e-10));

  const auto zero = dominant_eigenpair(Eigen::MatrixXd::Zero(3, 3));
  CHECK(zero.value == Approx(0.0).margin(1e-12));

  // Bipartite graphs have lambda_1 = -lambda_n; the shift must still find lambda_1.
  const auto c6 = dominant_eigenpair(adjacency_matrix<double>(cycle_graph(6)));
  CHECK(c6.value == Approx(2.0).epsilon(1e-10));

  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Graph g = gen_er(30, 0.2, rng);
    const Eigen::MatrixXd a = adjacency_matrix<double>(g);
    const auto e = symmetric_eigen(a);
    const double spectral = std::max(std::abs(e.eigenvalues(0)), std::abs(e.eigenvalues(29)));
    const auto d = dominant_eigenpair(a);
    CHECK(std::abs(d.value - spectral) <= 1e-8 * std::max(1.0, spectral));
    Eigen::Index top = 0;
    d.vector.cwiseAbs().maxCoeff(&top);
    CHECK(d.vector(top) > 0);
    CHECK(d.vector.norm() == Approx(1.0));
  }
}

TEST_CASE("least_squares_fit") {
  Eigen::MatrixXd x(3, 1);
  x << 1, 2, 3;
  Eigen::VectorXd y(3);
  y << 2, 4, 6;
  const auto fit = least_squares_fit(x, y, {"x"});
  CHECK(fit.coefficients(0) == Approx(0.0).margin(1e-12));
  CHECK(fit.coefficients(1) == Approx(2.0));
  CHECK(fit.feature_names == std::vector<std::string>{"x"});

  const auto flat = least_squares_fit(x, Eigen::VectorXd::Constant(3, 4.5), {"x"});
  CHECK(flat.coefficients(0) == Approx(4.5));
  CHECK(flat.coefficients(1) == Approx(0.0).margin(1e-12));

  Rng rng(1);
  Eigen::MatrixXd single(20, 1), doubled(20, 2);
  Eigen::VectorXd target(20);
  for (int i = 0; i < 20; ++i) {
    single(i, 0) = doubled(i, 0) = doubled(i, 1) = rng.uniform01();
    target(i) = 3 * single(i, 0) + rng.uniform(-0.1, 0.1);
  }
  const auto a = least_squares_fit(single, target, {"a"});
  const auto b = least_squares_fit(doubled, target, {"a", "a2"});
  CHECK((a.predict(single) - b.predict(doubled)).cwiseAbs().maxCoeff() <= 1e-10);

  Eigen::MatrixXd wide(30, 4);
  Eigen::VectorXd noisy(30);
  for (int i = 0; i < 30; ++i) {
    for (int j = 0; j < 4; ++j) wide(i, j) = rng.uniform(-1, 1);
    noisy(i) = rng.uniform(-1, 1);
  }
  const auto w = least_squares_fit(wide, noisy, {"a", "b", "c", "d"});
  const Eigen::VectorXd residual = noisy - w.predict(wide);
  CHECK(std::abs(residual.sum()) <= 1e-8);
  for (int j = 0; j < 4; ++j) CHECK(std::abs(wide.col(j).dot(residual)) <= 1e-8);

  CHECK_THROWS_AS(least_squares_fit(Eigen::MatrixXd(0, 1), Eigen::VectorXd(0), {"x"}), ValidationError);
  CHECK_THROWS_AS(least_squares_fit(x, Eigen::VectorXd(2), {"x"}), ValidationError);
}

TEST_CASE("pearson") {
  const std::vector<double> x = {1, 2, 3, 4}, neg = {-1, -2, -3, -4}, flat = {2, 2, 2, 2};
  CHECK(*pearson(x, x) == Approx(1.0));
  CHECK(*pearson(x, neg) == Approx(-1.0));
  CHECK_FALSE(pearson(flat, x).has_value());
  CHECK_THROWS_AS(pearson(std::span<const double>(x), std::span<const double>(flat.data(), 3)), ValidationError);
}

TEST_CASE("streaming moments merge like a single pass") {
  Rng rng(4);
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i) values.push_back(rng.uniform(-5, 5));
  RunningMoments all, left, right;
  for (std::size_t i = 0; i < values.size(); ++i) {
    all.push(values[i]);
    (i < 377 ? left : right).push(values[i]);
  }
  left.merge(right);
  CHECK(left.count == all.count);
  CHECK(left.mean == Approx(all.mean).epsilon(1e-12));
  CHECK(left.variance() == Approx(all.variance()).epsilon(1e-12));
  CHECK(left.min == all.min);
  CHECK(left.max == all.max);

  double mean = 0;
  for (double v : values) mean += v;
  mean /= 1000;
  double var = 0;
  for (double v : values) var += (v - mean) * (v - mean);
  CHECK(all.variance() == Approx(var / 999).epsilon(1e-12));
}

TEST_CASE("covariance accumulator correlation matches two-pass pearson") {
  Rng rng(8);
  CovarianceAccumulator<3> acc, a, b;
  std::vector<double> c0, c1, c2;
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector3d row(rng.uniform01(), 0, 7.0);
    row(1) = 2 * row(0) + rng.uniform(-0.5, 0.5);
    acc.push(row);
    (i % 3 ? a : b).push(row);
    c0.push_back(row(0));
    c1.push_back(row(1));
  }
  a.merge(b);
  const auto corr = acc.correlation();
  CHECK(corr(0, 1) == Approx(*pearson(c0, c1)).epsilon(1e-12));
  CHECK(a.correlation()(0, 1) == Approx(corr(0, 1)).epsilon(1e-12));
  CHECK(std::isnan(corr(0, 2)));
  CHECK(corr(0, 0) == 1.0);
}

TEST_CASE("quantile_sorted is type 7") {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  CHECK(quantile_sorted(v, 0.0) == 1);
  CHECK(quantile_sorted(v, 0.5) == 3);
  CHECK(quantile_sorted(v, 0.1) == Approx(1.4));
  CHECK(quantile_sorted(v, 1.0) == 5);
}
