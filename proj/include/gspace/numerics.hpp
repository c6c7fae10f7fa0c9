#pragma once

#include "gspace/errors.hpp"

#include <Eigen/Core>
#include <Eigen/QR>
#include <Eigen/Jacobi>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gspace::numerics {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Eigenvalues in descending order; column i of `eigenvectors` pairs with
/// eigenvalue i. Eigenvectors are empty when only values were requested.
template <typename Scalar>
struct SymmetricEigen {
  Vector<Scalar> eigenvalues;
  Matrix<Scalar> eigenvectors;
};

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kJacobiRelativeTolerance = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

template <typename Derived>
void require_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) throw ValidationError("matrix is not square");
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance)
        throw ValidationError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                              std::to_string(j) + ")");
}

namespace detail {

template <typename Scalar>
Scalar off_diagonal_norm(const Matrix<Scalar>& a) {
  Scalar sum(0);
  for (Eigen::Index j = 1; j < a.cols(); ++j) sum += a.col(j).head(j).squaredNorm();
  return std::sqrt(Scalar(2) * sum);
}

// Cyclic Jacobi. Each rotation updates columns p and q with Eigen's plane
// rotation kernel, then mirrors them into rows p and q; the 2x2 pivot block is
// set in closed form so a(p, q) is exactly zero afterwards.
template <typename Scalar>
void jacobi_diagonalize(Matrix<Scalar>& a, Matrix<Scalar>* vectors) {
  const Eigen::Index n = a.rows();
  const Scalar target = Scalar(kJacobiRelativeTolerance) * a.norm();
  for (int sweep = 0;; ++sweep) {
    if (off_diagonal_norm(a) <= target) return;
    if (sweep == kJacobiMaxSweeps) throw NumericError("Jacobi eigensolver did not converge");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Scalar apq = a(p, q);
        if (apq == Scalar(0)) continue;
        const Scalar theta = (a(q, q) - a(p, p)) / (Scalar(2) * apq);
        const Scalar t = (theta >= Scalar(0) ? Scalar(1) : Scalar(-1)) /
                         (std::abs(theta) + std::sqrt(theta * theta + Scalar(1)));
        const Scalar c = Scalar(1) / std::sqrt(t * t + Scalar(1));
        const Scalar s = t * c;
        const Scalar app = a(p, p) - t * apq;
        const Scalar aqq = a(q, q) + t * apq;

        // col_p <- c col_p - s col_q,  col_q <- s col_p + c col_q
        const Eigen::JacobiRotation<Scalar> rot(c, s);
        a.applyOnTheRight(p, q, rot);
        a.row(p) = a.col(p).transpose();
        a.row(q) = a.col(q).transpose();
        a(p, p) = app;
        a(q, q) = aqq;
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
        if (vectors) vectors->applyOnTheRight(p, q, rot);
      }
    }
  }
}

}  // namespace detail

/// Full eigendecomposition of a dense symmetric matrix by cyclic Jacobi
/// rotations. Converges when the off-diagonal Frobenius norm drops below
/// 1e-12 times the Frobenius norm of the input.
template <typename Derived>
SymmetricEigen<typename Derived::Scalar> symmetric_eigen(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  if (m.rows() == 0) throw ValidationError("eigendecomposition of an empty matrix");
  Matrix<Scalar> a = m;
  Matrix<Scalar> v = Matrix<Scalar>::Identity(m.rows(), m.cols());
  detail::jacobi_diagonalize(a, &v);

  std::vector<Eigen::Index> order(m.rows());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });
  SymmetricEigen<Scalar> out{Vector<Scalar>(m.rows()), Matrix<Scalar>(m.rows(), m.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(k) = a(order[k], order[k]);
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Eigenvalues only (descending); same Jacobi iteration without accumulating
/// the rotations.
template <typename Derived>
Vector<typename Derived::Scalar> symmetric_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  if (m.rows() == 0) throw ValidationError("eigendecomposition of an empty matrix");
  Matrix<Scalar> a = m;
  detail::jacobi_diagonalize<Scalar>(a, nullptr);
  Vector<Scalar> values = a.diagonal();
  std::sort(values.data(), values.data() + values.size(), std::greater<Scalar>());
  return values;
}

template <typename Scalar>
struct Eigenpair {
  Scalar value;
  Vector<Scalar> vector;
  int iterations = 0;
};

inline constexpr double kPowerTolerance = 1e-10;
inline constexpr int kPowerMaxIterations = 100000;

/// Largest eigenvalue and its unit eigenvector by power iteration on the
/// shifted matrix M + cI, c = 1 + max absolute row sum. The shift makes the
/// iteration matrix positive definite, so a bipartite spectrum (lambda_1 =
/// -lambda_n) cannot stall it. The returned vector's largest-magnitude
/// component is positive.
template <typename Derived>
Eigenpair<typename Derived::Scalar> dominant_eigenpair(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_symmetric(m);
  const Eigen::Index n = m.rows();
  if (n == 0) throw ValidationError("dominant eigenpair of an empty matrix");
  const Scalar shift = Scalar(1) + m.cwiseAbs().rowwise().sum().maxCoeff();

  // Slightly non-uniform start so a dominant vector orthogonal to the all-ones
  // vector is still reachable.
  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = Scalar(1) + Scalar(1e-3) * Scalar((i * 7919) % 101) / Scalar(101);
  x.normalize();
  const Matrix<Scalar> shifted = m + shift * Matrix<Scalar>::Identity(n, n);
  Vector<Scalar> next(n);
  for (int it = 1; it <= kPowerMaxIterations; ++it) {
    next.noalias() = shifted * x;
    next.normalize();
    const Scalar change = (next - x).cwiseAbs().maxCoeff();
    x.swap(next);
    if (change < Scalar(kPowerTolerance)) {
      Eigen::Index arg = 0;
      x.cwiseAbs().maxCoeff(&arg);
      if (x(arg) < Scalar(0)) x = -x;
      const Scalar lambda = x.dot(m * x);
      return {lambda, x, it};
    }
  }
  throw NumericError("power iteration hit the iteration limit");
}

/// Ordinary least squares with an intercept. coefficients(0) is the intercept,
/// coefficients(j + 1) belongs to feature_names[j].
struct RegressionFit {
  Vector<double> coefficients;
  std::vector<std::string> feature_names;

  template <typename Derived>
  Vector<double> predict(const Eigen::MatrixBase<Derived>& x) const {
    return (x * coefficients.tail(coefficients.size() - 1)).array() + coefficients(0);
  }
};

/// Minimizes ||y - [1 X] beta||^2 by column-pivoted Householder QR.
/// Rank-deficient directions get zero coefficients.
template <typename DerivedX, typename DerivedY>
RegressionFit least_squares_fit(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y,
                                std::vector<std::string> feature_names = {}) {
  if (x.rows() == 0 || y.size() == 0) throw ValidationError("least squares on empty input");
  if (x.rows() != y.size()) throw ValidationError("least squares: row count mismatch");
  if (x.rows() < x.cols() + 1) throw ValidationError("least squares: fewer rows than parameters");
  if (feature_names.empty()) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) feature_names.push_back("x" + std::to_string(j));
  }
  if (static_cast<Eigen::Index>(feature_names.size()) != x.cols())
    throw ValidationError("least squares: feature name count mismatch");

  Matrix<double> design(x.rows(), x.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(x.cols()) = x.template cast<double>();
  const Eigen::ColPivHouseholderQR<Matrix<double>> qr(design);
  return {qr.solve(y.template cast<double>()), std::move(feature_names)};
}

/// Pearson correlation; nullopt when either input is constant.
template <typename DerivedX, typename DerivedY>
std::optional<double> pearson(const Eigen::MatrixBase<DerivedX>& x, const Eigen::MatrixBase<DerivedY>& y) {
  if (x.size() != y.size()) throw ValidationError("pearson: length mismatch");
  if (x.size() < 2) throw ValidationError("pearson: need at least two observations");
  auto constant = [](const auto& v) { return (v.array() == v(0)).all(); };
  if (constant(x) || constant(y)) return std::nullopt;
  const auto dx = (x.array() - x.mean()).matrix();
  const auto dy = (y.array() - y.mean()).matrix();
  const double sxx = dx.squaredNorm(), syy = dy.squaredNorm();
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
  using Map = Eigen::Map<const Vector<double>>;
  return pearson(Map(x.data(), static_cast<Eigen::Index>(x.size())),
                 Map(y.data(), static_cast<Eigen::Index>(y.size())));
}

/// Streaming mean / variance / range (Welford), mergeable (Chan et al.) so
/// chunked reductions are order-independent up to rounding.
struct RunningMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();

  void push(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
    min = std::min(min, x);
    max = std::max(max, x);
  }

  void merge(const RunningMoments& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
    min = std::min(min, o.min);
    max = std::max(max, o.max);
  }

  /// Sample variance (n - 1 denominator).
  double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
  double stddev() const { return std::sqrt(variance()); }
};

/// Streaming mean vector and co-moment matrix for D-dimensional rows.
template <int D>
struct CovarianceAccumulator {
  using RowVector = Eigen::Matrix<double, D, 1>;
  using Square = Eigen::Matrix<double, D, D>;

  std::size_t count = 0;
  RowVector mean = RowVector::Zero();
  Square comoment = Square::Zero();
  RowVector min = RowVector::Constant(std::numeric_limits<double>::infinity());
  RowVector max = RowVector::Constant(-std::numeric_limits<double>::infinity());

  void push(const RowVector& x) {
    ++count;
    const RowVector before = x - mean;
    mean += before / static_cast<double>(count);
    comoment.noalias() += before * (x - mean).transpose();
    min = min.cwiseMin(x);
    max = max.cwiseMax(x);
  }

  void merge(const CovarianceAccumulator& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const RowVector delta = o.mean - mean;
    mean += delta * (nb / (na + nb));
    comoment += o.comoment + delta * delta.transpose() * (na * nb / (na + nb));
    count += o.count;
    min = min.cwiseMin(o.min);
    max = max.cwiseMax(o.max);
  }

  /// Pearson matrix; NaN rows/columns for constant coordinates.
  Square correlation() const {
    Square c = Square::Constant(std::numeric_limits<double>::quiet_NaN());
    for (int i = 0; i < D; ++i) {
      for (int j = i; j < D; ++j) {
        if (count < 2 || min(i) == max(i) || min(j) == max(j)) continue;
        c(i, j) = i == j ? 1.0
                         : std::clamp(comoment(i, j) / std::sqrt(comoment(i, i) * comoment(j, j)), -1.0, 1.0);
        c(j, i) = c(i, j);
      }
    }
    return c;
  }
};

/// Linear-interpolation quantile (Hyndman-Fan type 7) of ascending data.
inline double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace gspace::numerics
