#pragma once

#include "gspace/analytics/classifier.hpp"
#include "gspace/analytics/dataset.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace gspace::analytics {

struct HoldoutSplit {
  std::vector<Eigen::Index> train, test;
};

/// Per class, a seeded shuffle puts round(train_fraction * class size) rows in train.
HoldoutSplit stratified_split(std::span<const int> labels, int classes, double train_fraction, std::uint64_t seed);

struct EvaluationOptions {
  int trees = 100;
  LogisticOptions logistic{};
  double train_fraction = 0.8;
};

ClassifierModel fit_classifier(ClassifierKind kind, const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                               const EvaluationOptions& options, std::uint64_t seed, unsigned threads = 1);

/// Test accuracy of one train/test run on the given feature columns.
double holdout_accuracy(const Dataset& d, ClassifierKind kind, std::span<const int> features, const HoldoutSplit& split,
                        const EvaluationOptions& options, std::uint64_t seed, unsigned threads = 1);

struct HoldoutResult {
  std::vector<double> accuracies;  // one per repeat
  double mean = 0.0;
  double stddev = 0.0;
};

/// Repeat r splits with child_seed(seed, 2r) and fits with child_seed(seed, 2r + 1).
/// Throws ValidationError for an unlabeled dataset, repeats < 1 or an empty feature list.
HoldoutResult repeated_holdout_accuracy(const Dataset& d, ClassifierKind kind, std::span<const int> features,
                                        int repeats, std::uint64_t seed, const EvaluationOptions& options = {},
                                        unsigned threads = 1);

struct SweepRow {
  std::vector<int> subset;
  std::vector<HoldoutResult> results;  // one per requested classifier kind
};

/// All subsets of the given size in lexicographic order.
std::vector<std::vector<int>> all_subsets(int size);
/// Subsets of the given size that contain `required`, plus `extra` others
/// drawn without replacement from the rest (seeded), in lexicographic order.
std::vector<std::vector<int>> restricted_subsets(int size, int required, int extra, std::uint64_t seed);

/// Scores every subset with each classifier kind and ranks rows by the
/// first kind's mean accuracy (descending, ties by subset order).
std::vector<SweepRow> subset_sweep(const Dataset& d, std::span<const ClassifierKind> kinds,
                                   const std::vector<std::vector<int>>& subsets, int repeats, std::uint64_t seed,
                                   const EvaluationOptions& options = {}, unsigned threads = 1);

}  // namespace gspace::analytics
