#include "gspace/analytics/evaluation.hpp"

#include "gspace/errors.hpp"
#include "gspace/numerics.hpp"
#include "gspace/parallel.hpp"
#include "gspace/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gspace::analytics {

namespace {

void subsets_rec(int size, int start, std::vector<int>& current, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == size) {
    out.push_back(current);
    return;
  }
  for (int p = start; p < kPropertyCount; ++p) {
    current.push_back(p);
    subsets_rec(size, p + 1, current, out);
    current.pop_back();
  }
}

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x, std::span<const Eigen::Index> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

}  // namespace

HoldoutSplit stratified_split(std::span<const int> labels, int classes, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw ValidationError("train fraction must lie in (0, 1)");
  std::vector<std::vector<Eigen::Index>> by_class(static_cast<std::size_t>(classes));
  for (std::size_t r = 0; r < labels.size(); ++r) by_class.at(labels[r]).push_back(static_cast<Eigen::Index>(r));
  Rng rng(seed);
  HoldoutSplit split;
  for (auto& rows : by_class) {
    rng.shuffle(std::span(rows));
    const auto cut = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(rows.size())));
    split.train.insert(split.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(cut));
    split.test.insert(split.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(cut), rows.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

ClassifierModel fit_classifier(ClassifierKind kind, const Eigen::MatrixXd& x, std::span<const int> y, int classes,
                               const EvaluationOptions& options, std::uint64_t seed, unsigned threads) {
  if (kind == ClassifierKind::RandomForest) {
    ForestOptions forest;
    forest.trees = options.trees;
    forest.seed = seed;
    return {fit_random_forest(x, y, classes, forest, threads)};
  }
  return {fit_logistic(x, y, classes, options.logistic)};
}

double holdout_accuracy(const Dataset& d, ClassifierKind kind, std::span<const int> features, const HoldoutSplit& split,
                        const EvaluationOptions& options, std::uint64_t seed, unsigned threads) {
  if (split.test.empty()) throw ValidationError("holdout split has an empty test set");
  const Eigen::MatrixXd x = select_columns(d.features, features);
  std::vector<int> y_train, y_test;
  for (auto r : split.train) y_train.push_back(d.labels[r]);
  for (auto r : split.test) y_test.push_back(d.labels[r]);
  const auto model = fit_classifier(kind, gather_rows(x, split.train), y_train, d.class_count(), options, seed, threads);
  const auto predicted = model.predict(gather_rows(x, split.test));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < predicted.size(); ++i) correct += predicted[i] == y_test[i];
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

HoldoutResult repeated_holdout_accuracy(const Dataset& d, ClassifierKind kind, std::span<const int> features,
                                        int repeats, std::uint64_t seed, const EvaluationOptions& options,
                                        unsigned threads) {
  d.validate();
  if (!d.labeled()) throw ValidationError("holdout evaluation needs a labeled dataset");
  if (repeats < 1) throw ValidationError("repeats must be at least 1");
  if (features.empty()) throw ValidationError("feature subset must not be empty");
  for (int f : features)
    if (f < 0 || f >= kPropertyCount) throw ValidationError("feature index out of range");
  HoldoutResult result;
  numerics::RunningMoments moments;
  for (int r = 0; r < repeats; ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    const auto split = stratified_split(d.labels, d.class_count(), options.train_fraction, child_seed(seed, 2 * ur));
    const double acc = holdout_accuracy(d, kind, features, split, options, child_seed(seed, 2 * ur + 1), threads);
    result.accuracies.push_back(acc);
    moments.push(acc);
  }
  result.mean = moments.mean;
  result.stddev = moments.stddev();
  return result;
}

std::vector<std::vector<int>> all_subsets(int size) {
  if (size < 1 || size > kPropertyCount) throw ValidationError("subset size out of range");
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  subsets_rec(size, 0, current, out);
  return out;
}

std::vector<std::vector<int>> restricted_subsets(int size, int required, int extra, std::uint64_t seed) {
  std::vector<std::vector<int>> with, without;
  for (auto& s : all_subsets(size))
    (std::find(s.begin(), s.end(), required) != s.end() ? with : without).push_back(std::move(s));
  Rng rng(seed);
  rng.shuffle(std::span(without));
  without.resize(std::min<std::size_t>(without.size(), static_cast<std::size_t>(std::max(extra, 0))));
  with.insert(with.end(), without.begin(), without.end());
  std::sort(with.begin(), with.end());
  return with;
}

std::vector<SweepRow> subset_sweep(const Dataset& d, std::span<const ClassifierKind> kinds,
                                   const std::vector<std::vector<int>>& subsets, int repeats, std::uint64_t seed,
                                   const EvaluationOptions& options, unsigned threads) {
  if (kinds.empty()) throw ValidationError("subset sweep needs at least one classifier kind");
  std::vector<SweepRow> rows(subsets.size());
  parallel_for(subsets.size(), threads, [&](std::size_t i) {
    rows[i].subset = subsets[i];
    for (auto kind : kinds)
      rows[i].results.push_back(repeated_holdout_accuracy(d, kind, subsets[i], repeats, seed, options));
  });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.results[0].mean > b.results[0].mean; });
  return rows;
}

}  // namespace gspace::analytics
