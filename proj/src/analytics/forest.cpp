#include "gspace/analytics/classifier.hpp"

#include "gspace/errors.hpp"
#include "gspace/parallel.hpp"
#include "gspace/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gspace::analytics {

namespace {

void check_labels(const Eigen::MatrixXd& x, std::span<const int> y, int classes) {
  if (x.rows() == 0 || x.cols() == 0) throw ValidationError("classifier needs a non-empty feature matrix");
  if (static_cast<Eigen::Index>(y.size()) != x.rows()) throw ValidationError("label count does not match rows");
  if (classes < 1) throw ValidationError("classifier needs at least one class");
  for (int label : y)
    if (label < 0 || label >= classes) throw ValidationError("label outside [0, classes)");
}

int argmax_lowest(std::span<const int> counts) {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

class TreeBuilder {
 public:
  TreeBuilder(const Eigen::MatrixXd& x, std::span<const int> y, int classes, int max_features, int min_leaf, Rng& rng)
      : x_(x), y_(y), classes_(classes), max_features_(max_features), min_leaf_(min_leaf), rng_(rng) {}

  DecisionTree build(std::vector<Eigen::Index> rows) {
    DecisionTree tree;
    features_.resize(static_cast<std::size_t>(x_.cols()));
    struct Task {
      int node;
      std::vector<Eigen::Index> rows;
    };
    std::vector<Task> stack;
    tree.nodes_.emplace_back();
    stack.push_back({0, std::move(rows)});
    while (!stack.empty()) {
      Task task = std::move(stack.back());
      stack.pop_back();
      std::vector<int> counts(static_cast<std::size_t>(classes_), 0);
      for (auto r : task.rows) ++counts[y_[r]];
      tree.nodes_[task.node].label = argmax_lowest(counts);
      const bool pure = std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }) <= 1;
      if (pure || static_cast<int>(task.rows.size()) < 2 * min_leaf_) continue;
      const Split split = best_split(task.rows, counts);
      if (split.feature < 0) continue;
      std::vector<Eigen::Index> left, right;
      for (auto r : task.rows) (x_(r, split.feature) <= split.threshold ? left : right).push_back(r);
      const int l = static_cast<int>(tree.nodes_.size());
      tree.nodes_.emplace_back();
      tree.nodes_.emplace_back();
      auto& node = tree.nodes_[task.node];
      node.feature = split.feature;
      node.threshold = split.threshold;
      node.left = l;
      node.right = l + 1;
      stack.push_back({l + 1, std::move(right)});
      stack.push_back({l, std::move(left)});
    }
    return tree;
  }

 private:
  struct Split {
    int feature = -1;
    double threshold = 0.0;
    double score = 0.0;  // weighted child impurity, times node size
  };

  // Sum over children of size * gini, expressed as size - sum(count^2) / size.
  static double weighted_gini(const std::vector<int>& counts, int size) {
    if (size == 0) return 0.0;
    double sq = 0.0;
    for (int c : counts) sq += static_cast<double>(c) * c;
    return size - sq / size;
  }

  Split best_split(const std::vector<Eigen::Index>& rows, const std::vector<int>& counts) {
    std::iota(features_.begin(), features_.end(), 0);
    const int d = static_cast<int>(features_.size());
    const int mtry = std::clamp(max_features_, 1, d);
    Split best;
    const int total = static_cast<int>(rows.size());
    std::vector<std::pair<double, int>> values(rows.size());
    std::vector<int> left(static_cast<std::size_t>(classes_)), right(static_cast<std::size_t>(classes_));
    for (int k = 0; k < d; ++k) {
      if (k >= mtry && best.feature >= 0) break;
      // Partial Fisher-Yates: position k receives a uniformly chosen unused feature.
      const auto j = k + static_cast<int>(rng_.uniform_below(static_cast<std::uint64_t>(d - k)));
      std::swap(features_[k], features_[j]);
      const int f = features_[k];
      for (std::size_t i = 0; i < rows.size(); ++i) values[i] = {x_(rows[i], f), y_[rows[i]]};
      std::sort(values.begin(), values.end());
      if (values.front().first == values.back().first) continue;
      std::fill(left.begin(), left.end(), 0);
      right = counts;
      for (int i = 0; i + 1 < total; ++i) {
        ++left[values[i].second];
        --right[values[i].second];
        if (values[i].first == values[i + 1].first) continue;
        const int n_left = i + 1;
        if (n_left < min_leaf_ || total - n_left < min_leaf_) continue;
        const double score = weighted_gini(left, n_left) + weighted_gini(right, total - n_left);
        if (best.feature < 0 || score < best.score) {
          double threshold = 0.5 * (values[i].first + values[i + 1].first);
          // Guard against the midpoint rounding up to the right value.
          if (threshold >= values[i + 1].first) threshold = values[i].first;
          best = {f, threshold, score};
        }
      }
    }
    return best;
  }

  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  int classes_;
  int max_features_;
  int min_leaf_;
  Rng& rng_;
  std::vector<int> features_;
};

int DecisionTree::predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  int node = 0;
  while (nodes_[node].feature >= 0) node = x(nodes_[node].feature) <= nodes_[node].threshold ? nodes_[node].left
                                                                                              : nodes_[node].right;
  return nodes_[node].label;
}

int DecisionTree::depth() const {
  std::vector<int> level(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (nodes_[i].feature >= 0) level[nodes_[i].left] = level[nodes_[i].right] = level[i] + 1;
  }
  return deepest;
}

int RandomForest::predict_row(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
  std::vector<int> votes(static_cast<std::size_t>(classes_), 0);
  for (const auto& tree : trees_) ++votes[tree.predict(x)];
  return argmax_lowest(votes);
}

std::vector<int> RandomForest::predict(const Eigen::MatrixXd& x) const {
  if (x.cols() != features_) throw ValidationError("feature count does not match the fitted forest");
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index r = 0; r < x.rows(); ++r) out[r] = predict_row(x.row(r));
  return out;
}

RandomForest fit_random_forest(const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                               const ForestOptions& options, unsigned threads) {
  check_labels(x, y, classes);
  if (options.trees < 1) throw ValidationError("forest needs at least one tree");
  if (options.min_leaf < 1) throw ValidationError("min_leaf must be at least 1");
  const int d = static_cast<int>(x.cols());
  const int mtry = options.max_features > 0 ? options.max_features
                                            : static_cast<int>(std::ceil(std::sqrt(static_cast<double>(d))));
  RandomForest forest;
  forest.classes_ = classes;
  forest.features_ = d;
  forest.trees_.resize(static_cast<std::size_t>(options.trees));
  parallel_for(forest.trees_.size(), threads, [&](std::size_t k) {
    Rng rng(child_seed(options.seed, k));
    std::vector<Eigen::Index> sample(static_cast<std::size_t>(x.rows()));
    for (auto& r : sample) r = static_cast<Eigen::Index>(rng.uniform_below(static_cast<std::uint64_t>(x.rows())));
    TreeBuilder builder(x, y, classes, mtry, options.min_leaf, rng);
    forest.trees_[k] = builder.build(std::move(sample));
  });
  return forest;
}

RandomForest fit_random_forest(const Dataset& d, int trees, std::uint64_t seed, unsigned threads) {
  d.validate();
  if (!d.labeled()) throw ValidationError("forest needs a labeled dataset");
  ForestOptions options;
  options.trees = trees;
  options.seed = seed;
  return fit_random_forest(d.features, d.labels, d.class_count(), options, threads);
}

const char* to_string(ClassifierKind kind) {
  return kind == ClassifierKind::RandomForest ? "rf" : "lr";
}

ClassifierKind parse_classifier_kind(const std::string& name) {
  if (name == "rf" || name == "forest" || name == "random_forest") return ClassifierKind::RandomForest;
  if (name == "lr" || name == "logistic") return ClassifierKind::Logistic;
  throw InputError("unknown classifier: " + name);
}

}  // namespace gspace::analytics
