#pragma once

#include "gspace/analytics/dataset.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace gspace::analytics {

/// CART tree stored as a flat node array; node 0 is the root.
class DecisionTree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;   // rows with x[feature] <= threshold
    int right = -1;
    int label = 0;   // majority class of the node
  };

  int predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  int depth() const;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
};

struct ForestOptions {
  int trees = 100;
  int max_features = 0;  // 0 selects ceil(sqrt(d))
  int min_leaf = 1;
  std::uint64_t seed = 0;
};

class RandomForest {
 public:
  int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  std::vector<int> predict(const Eigen::MatrixXd& x) const;
  const std::vector<DecisionTree>& trees() const { return trees_; }
  int classes() const { return classes_; }
  int features() const { return features_; }

 private:
  friend RandomForest fit_random_forest(const Eigen::MatrixXd&, std::span<const int>, int, const ForestOptions&,
                                        unsigned);
  std::vector<DecisionTree> trees_;
  int classes_ = 0;
  int features_ = 0;
};

/// Bagged CART trees: Gini impurity, midpoint thresholds, a fresh random
/// feature subset at every node (extended past max_features only when no
/// sampled feature separates the node), grown until pure or min_leaf.
/// Tree k draws from Rng(child_seed(seed, k)). Votes tie to the lowest class.
/// Throws ValidationError on empty data, label/row mismatch or labels outside [0, classes).
RandomForest fit_random_forest(const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                               const ForestOptions& options = {}, unsigned threads = 1);
RandomForest fit_random_forest(const Dataset& d, int trees, std::uint64_t seed, unsigned threads = 1);

struct LogisticOptions {
  double l2 = 1e-4;
  int iterations = 2000;
  double initial_step = 1.0;
};

/// Multinomial softmax regression on z-scored inputs.
class LogisticModel {
 public:
  Eigen::MatrixXd probabilities(const Eigen::MatrixXd& x) const;
  int predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const;
  std::vector<int> predict(const Eigen::MatrixXd& x) const;
  const Eigen::MatrixXd& weights() const { return weights_; }  // (d + 1) x classes, bias row first
  double final_loss() const { return loss_; }

 private:
  friend LogisticModel fit_logistic(const Eigen::MatrixXd&, std::span<const int>, int, const LogisticOptions&);
  Eigen::MatrixXd design(const Eigen::MatrixXd& x) const;
  Eigen::RowVectorXd mean_;
  Eigen::RowVectorXd scale_;
  Eigen::MatrixXd weights_;
  double loss_ = 0.0;
};

/// Full-batch gradient descent on mean cross-entropy plus (l2 / 2) |W|^2
/// (bias excluded). A step that raises the loss is rejected and the step size
/// halved. Throws NumericError if the loss becomes non-finite.
LogisticModel fit_logistic(const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                           const LogisticOptions& options = {});
LogisticModel fit_logistic(const Dataset& d, double l2 = 1e-4, int iterations = 2000);

enum class ClassifierKind { RandomForest, Logistic };
const char* to_string(ClassifierKind kind);
ClassifierKind parse_classifier_kind(const std::string& name);

struct ClassifierModel {
  std::variant<RandomForest, LogisticModel> model;

  ClassifierKind kind() const {
    return std::holds_alternative<RandomForest>(model) ? ClassifierKind::RandomForest : ClassifierKind::Logistic;
  }
  std::vector<int> predict(const Eigen::MatrixXd& x) const {
    return std::visit([&](const auto& m) { return m.predict(x); }, model);
  }
};

}  // namespace gspace::analytics
