#include "gspace/analytics/classifier.hpp"

#include "gspace/errors.hpp"

#include <cmath>

namespace gspace::analytics {

namespace {

struct Objective {
  double loss;
  Eigen::MatrixXd gradient;
};

// Row-wise softmax in place; returns the mean negative log-likelihood.
double softmax_nll(Eigen::MatrixXd& scores, std::span<const int> y) {
  double nll = 0.0;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    const double top = scores.row(r).maxCoeff();
    scores.row(r) = (scores.row(r).array() - top).exp();
    const double total = scores.row(r).sum();
    nll -= std::log(scores(r, y[r]) / total);
    scores.row(r) /= total;
  }
  return nll / static_cast<double>(scores.rows());
}

double penalty(const Eigen::MatrixXd& w, double l2) {
  return 0.5 * l2 * w.bottomRows(w.rows() - 1).squaredNorm();
}

}  // namespace

Eigen::MatrixXd LogisticModel::design(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean_.size()) throw ValidationError("feature count does not match the fitted model");
  Eigen::MatrixXd z(x.rows(), x.cols() + 1);
  z.col(0).setOnes();
  z.rightCols(x.cols()) = (x.rowwise() - mean_).array().rowwise() / scale_.array();
  return z;
}

Eigen::MatrixXd LogisticModel::probabilities(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd scores = design(x) * weights_;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    scores.row(r) = (scores.row(r).array() - scores.row(r).maxCoeff()).exp();
    scores.row(r) /= scores.row(r).sum();
  }
  return scores;
}

int LogisticModel::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  return predict(Eigen::MatrixXd(x)).front();
}

std::vector<int> LogisticModel::predict(const Eigen::MatrixXd& x) const {
  const Eigen::MatrixXd scores = design(x) * weights_;
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) scores.row(r).maxCoeff(&out[r]);
  return out;
}

LogisticModel fit_logistic(const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                           const LogisticOptions& options) {
  if (x.rows() == 0 || x.cols() == 0) throw ValidationError("classifier needs a non-empty feature matrix");
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) throw ValidationError("label count does not match rows");
  if (classes < 1) throw ValidationError("classifier needs at least one class");
  for (int label : y)
    if (label < 0 || label >= classes) throw ValidationError("label outside [0, classes)");
  if (options.iterations < 0 || !(options.l2 >= 0.0) || !(options.initial_step > 0.0))
    throw ValidationError("invalid logistic regression options");

  LogisticModel model;
  const double rows = static_cast<double>(x.rows());
  model.mean_ = x.colwise().mean();
  model.scale_ = ((x.rowwise() - model.mean_).array().square().colwise().sum() / rows).sqrt();
  for (Eigen::Index j = 0; j < model.scale_.size(); ++j)
    if (!(model.scale_(j) > 0.0)) model.scale_(j) = 1.0;
  model.weights_ = Eigen::MatrixXd::Zero(x.cols() + 1, classes);
  const Eigen::MatrixXd z = model.design(x);
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(x.rows(), classes);
  for (Eigen::Index r = 0; r < x.rows(); ++r) onehot(r, y[r]) = 1.0;

  auto evaluate = [&](const Eigen::MatrixXd& w) {
    Eigen::MatrixXd p = z * w;
    const double loss = softmax_nll(p, y) + penalty(w, options.l2);
    Eigen::MatrixXd grad = z.transpose() * (p - onehot) / rows;
    grad.bottomRows(grad.rows() - 1) += options.l2 * w.bottomRows(w.rows() - 1);
    return Objective{loss, std::move(grad)};
  };

  Objective current = evaluate(model.weights_);
  double step = options.initial_step;
  for (int it = 0; it < options.iterations; ++it) {
    const Eigen::MatrixXd trial = model.weights_ - step * current.gradient;
    Objective next = evaluate(trial);
    if (!(next.loss <= current.loss)) {
      step *= 0.5;
      continue;
    }
    model.weights_ = trial;
    current = std::move(next);
  }
  if (!std::isfinite(current.loss)) throw NumericError("logistic regression diverged");
  model.loss_ = current.loss;
  return model;
}

LogisticModel fit_logistic(const Dataset& d, double l2, int iterations) {
  d.validate();
  if (!d.labeled()) throw ValidationError("logistic regression needs a labeled dataset");
  LogisticOptions options;
  options.l2 = l2;
  options.iterations = iterations;
  return fit_logistic(d.features, d.labels, d.class_count(), options);
}

}  // namespace gspace::analytics
