#pragma once

#include "gspace/generators.hpp"
#include "gspace/properties.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gspace::analytics {

/// Provenance of one dataset row.
struct RowInfo {
  std::string generator;
  std::uint64_t seed = 0;
  int n = 0;
};

/// Property vectors as a rows x 12 feature matrix (column order = Property),
/// with optional class labels and per-row provenance.
struct Dataset {
  Eigen::MatrixXd features = Eigen::MatrixXd(0, kPropertyCount);
  std::vector<int> labels;               // empty, or one class index per row
  std::vector<std::string> class_names;  // names of class indices
  std::vector<RowInfo> info;             // empty, or one entry per row

  Eigen::Index rows() const { return features.rows(); }
  bool labeled() const { return !labels.empty(); }
  int class_count() const { return static_cast<int>(class_names.size()); }
  auto column(Property p) const { return features.col(index_of(p)); }

  /// Throws ValidationError on a non-rectangular dataset or misaligned labels.
  void validate() const;
  void append(const PropertyVector& pv, RowInfo row_info = {}, int label = -1);
  /// Rows gathered in the given order.
  Dataset subset(std::span<const Eigen::Index> row_indices) const;
};

/// Feature columns in the given order.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& x, std::span<const int> columns);

/// Property vectors of `count` connected graphs drawn from spec. Row i uses
/// Rng(stream_seed(seed, i)); disconnected draws are redrawn from the same
/// stream (at most 10000 per row, then SamplingError).
Dataset sample_dataset(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads = 1,
                       std::vector<Graph>* graphs = nullptr);

}  // namespace gspace::analytics
