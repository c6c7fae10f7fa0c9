#pragma once

#include "gspace/analytics/dataset.hpp"
#include "gspace/numerics.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gspace::analytics {

inline constexpr int kPredictorCount = kPropertyCount - 1;
inline constexpr int kExpandedWidth = 99;

/// 11 raw inputs, then x_i * x_j for i <= j (row-major), then sqrt|x_i|,
/// then log(1 + |x_i|). Throws ValidationError unless the row has 11 entries.
Eigen::RowVectorXd expand_nonlinear_features(const Eigen::Ref<const Eigen::RowVectorXd>& row);
Eigen::MatrixXd expand_nonlinear_matrix(const Eigen::MatrixXd& rows);
std::vector<std::string> expanded_feature_names(std::span<const std::string> base);

enum class PredictorMode { Mean, Linear, Nonlinear };
const char* to_string(PredictorMode mode);
PredictorMode parse_predictor_mode(const std::string& name);

/// Seeded shuffle of row indices into 80% train, 10% dev, 10% test.
struct RegressionSplit {
  std::vector<Eigen::Index> train, dev, test;
};
RegressionSplit regression_split(Eigen::Index rows, std::uint64_t seed);

struct PredictorResult {
  Property target{};
  PredictorMode mode{};
  double mean = 0.0;                      // training-target mean (MEAN mode)
  std::optional<numerics::RegressionFit> fit;
  double train_loss = 0.0;                // mean |y_hat - y|
  double dev_loss = 0.0;
  double test_loss = 0.0;
};

/// Predicts `target` from the other eleven properties. Throws ValidationError
/// for fewer than 100 rows.
PredictorResult train_predictors(const Dataset& d, Property target, PredictorMode mode, std::uint64_t split_seed);
PredictorResult train_predictors(const Dataset& d, Property target, PredictorMode mode, const RegressionSplit& split);

/// Test L1 loss of an ordinary least squares fit of target on the given columns.
double linear_subset_loss(const Dataset& d, int target, std::span<const int> predictors, const RegressionSplit& split);

struct ImportanceMatrix {
  Eigen::Matrix<int, kPropertyCount, kPropertyCount> counts = Eigen::Matrix<int, kPropertyCount, kPropertyCount>::Zero();
};

/// For every target t, base pair {a, b} and candidate c outside {t, a, b},
/// counts[t][c] is incremented when adding c cuts the test loss to at most
/// (1 - threshold) of the pair's loss. Losses at or below 1e-12 are treated
/// as already exact and never improved upon.
/// Throws ValidationError unless 0 < threshold < 1.
ImportanceMatrix importance_matrix(const Dataset& d, double threshold, std::uint64_t split_seed, unsigned threads = 1);

}  // namespace gspace::analytics
