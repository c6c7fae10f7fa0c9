#include "gspace/analytics/regression.hpp"

#include "gspace/errors.hpp"
#include "gspace/parallel.hpp"
#include "gspace/rng.hpp"

#include <cmath>
#include <numeric>

namespace gspace::analytics {

namespace {

constexpr double kExactLoss = 1e-12;

std::vector<int> others(int target) {
  std::vector<int> cols;
  for (int p = 0; p < kPropertyCount; ++p)
    if (p != target) cols.push_back(p);
  return cols;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& x, std::span<const Eigen::Index> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

Eigen::VectorXd gather(const Eigen::VectorXd& y, std::span<const Eigen::Index> rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = y(rows[i]);
  return out;
}

double l1(const Eigen::VectorXd& prediction, const Eigen::VectorXd& y) {
  return y.size() == 0 ? 0.0 : (prediction - y).cwiseAbs().mean();
}

}  // namespace

Eigen::RowVectorXd expand_nonlinear_features(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  if (row.size() != kPredictorCount) throw ValidationError("nonlinear expansion needs 11 inputs");
  Eigen::RowVectorXd out(kExpandedWidth);
  Eigen::Index k = 0;
  for (int i = 0; i < kPredictorCount; ++i) out(k++) = row(i);
  for (int i = 0; i < kPredictorCount; ++i)
    for (int j = i; j < kPredictorCount; ++j) out(k++) = row(i) * row(j);
  for (int i = 0; i < kPredictorCount; ++i) out(k++) = std::sqrt(std::abs(row(i)));
  for (int i = 0; i < kPredictorCount; ++i) out(k++) = std::log1p(std::abs(row(i)));
  return out;
}

Eigen::MatrixXd expand_nonlinear_matrix(const Eigen::MatrixXd& rows) {
  Eigen::MatrixXd out(rows.rows(), kExpandedWidth);
  for (Eigen::Index r = 0; r < rows.rows(); ++r) out.row(r) = expand_nonlinear_features(rows.row(r));
  return out;
}

std::vector<std::string> expanded_feature_names(std::span<const std::string> base) {
  if (base.size() != kPredictorCount) throw ValidationError("nonlinear expansion needs 11 names");
  std::vector<std::string> names(base.begin(), base.end());
  for (int i = 0; i < kPredictorCount; ++i)
    for (int j = i; j < kPredictorCount; ++j) names.push_back(base[i] + "*" + base[j]);
  for (const auto& b : base) names.push_back("sqrt|" + b + "|");
  for (const auto& b : base) names.push_back("log1p|" + b + "|");
  return names;
}

const char* to_string(PredictorMode mode) {
  switch (mode) {
    case PredictorMode::Mean: return "mean";
    case PredictorMode::Linear: return "linear";
    case PredictorMode::Nonlinear: return "nonlinear";
  }
  return "unknown";
}

PredictorMode parse_predictor_mode(const std::string& name) {
  if (name == "mean") return PredictorMode::Mean;
  if (name == "linear") return PredictorMode::Linear;
  if (name == "nonlinear") return PredictorMode::Nonlinear;
  throw InputError("unknown predictor mode: " + name);
}

RegressionSplit regression_split(Eigen::Index rows, std::uint64_t seed) {
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rows));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  rng.shuffle(std::span(order));
  const auto n_train = static_cast<std::size_t>(std::llround(0.8 * static_cast<double>(rows)));
  const auto n_dev = static_cast<std::size_t>(std::llround(0.1 * static_cast<double>(rows)));
  RegressionSplit split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.dev.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train),
                   order.begin() + static_cast<std::ptrdiff_t>(n_train + n_dev));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train + n_dev), order.end());
  return split;
}

PredictorResult train_predictors(const Dataset& d, Property target, PredictorMode mode, std::uint64_t split_seed) {
  return train_predictors(d, target, mode, regression_split(d.rows(), split_seed));
}

PredictorResult train_predictors(const Dataset& d, Property target, PredictorMode mode, const RegressionSplit& split) {
  d.validate();
  if (d.rows() < 100) throw ValidationError("prediction needs at least 100 rows");
  const int t = index_of(target);
  const Eigen::VectorXd y = d.features.col(t);
  const Eigen::VectorXd y_train = gather(y, split.train), y_dev = gather(y, split.dev), y_test = gather(y, split.test);

  PredictorResult result;
  result.target = target;
  result.mode = mode;
  if (mode == PredictorMode::Mean) {
    numerics::RunningMoments m;
    for (Eigen::Index i = 0; i < y_train.size(); ++i) m.push(y_train(i));
    result.mean = m.mean;
    // A constant target must give exactly zero loss, so the mean is clamped
    // to the observed range to absorb rounding.
    if (m.count > 0) result.mean = std::clamp(result.mean, m.min, m.max);
    auto constant = [&](const Eigen::VectorXd& v) { return Eigen::VectorXd::Constant(v.size(), result.mean).eval(); };
    result.train_loss = l1(constant(y_train), y_train);
    result.dev_loss = l1(constant(y_dev), y_dev);
    result.test_loss = l1(constant(y_test), y_test);
    return result;
  }

  const auto cols = others(t);
  Eigen::MatrixXd x = select_columns(d.features, cols);
  std::vector<std::string> names;
  for (int c : cols) names.emplace_back(kPropertyNames[c]);
  if (mode == PredictorMode::Nonlinear) {
    x = expand_nonlinear_matrix(x);
    names = expanded_feature_names(names);
  }
  const Eigen::MatrixXd x_train = gather(x, split.train);
  result.fit = numerics::least_squares_fit(x_train, y_train, names);
  result.train_loss = l1(result.fit->predict(x_train), y_train);
  result.dev_loss = l1(result.fit->predict(gather(x, split.dev)), y_dev);
  result.test_loss = l1(result.fit->predict(gather(x, split.test)), y_test);
  return result;
}

double linear_subset_loss(const Dataset& d, int target, std::span<const int> predictors, const RegressionSplit& split) {
  const Eigen::MatrixXd x = select_columns(d.features, predictors);
  const Eigen::VectorXd y = d.features.col(target);
  std::vector<std::string> names;
  for (int c : predictors) names.emplace_back(kPropertyNames[c]);
  const auto fit = numerics::least_squares_fit(gather(x, split.train), gather(y, split.train), names);
  return l1(fit.predict(gather(x, split.test)), gather(y, split.test));
}

ImportanceMatrix importance_matrix(const Dataset& d, double threshold, std::uint64_t split_seed, unsigned threads) {
  d.validate();
  if (!(threshold > 0.0 && threshold < 1.0)) throw ValidationError("importance threshold must lie in (0, 1)");
  const auto split = regression_split(d.rows(), split_seed);
  std::vector<Eigen::Matrix<int, 1, kPropertyCount>> rows(kPropertyCount);
  parallel_for(kPropertyCount, threads, [&](std::size_t ti) {
    const int t = static_cast<int>(ti);
    rows[ti].setZero();
    const auto cols = others(t);
    for (std::size_t ai = 0; ai < cols.size(); ++ai) {
      for (std::size_t bi = ai + 1; bi < cols.size(); ++bi) {
        const int pair[] = {cols[ai], cols[bi]};
        const double base = linear_subset_loss(d, t, pair, split);
        if (base <= kExactLoss) continue;
        for (int c : cols) {
          if (c == pair[0] || c == pair[1]) continue;
          const int triple[] = {pair[0], pair[1], c};
          if (linear_subset_loss(d, t, triple, split) <= (1.0 - threshold) * base) ++rows[ti](c);
        }
      }
    }
  });
  ImportanceMatrix m;
  for (int t = 0; t < kPropertyCount; ++t) m.counts.row(t) = rows[t];
  return m;
}

}  // namespace gspace::analytics
