#include "gspace/analytics/dataset.hpp"

#include "gspace/errors.hpp"
#include "gspace/parallel.hpp"

#include <optional>

namespace gspace::analytics {

void Dataset::validate() const {
  if (features.cols() != kPropertyCount)
    throw ValidationError("dataset must have " + std::to_string(kPropertyCount) + " feature columns");
  if (!labels.empty()) {
    if (static_cast<Eigen::Index>(labels.size()) != rows()) throw ValidationError("label count does not match rows");
    for (int label : labels)
      if (label < 0 || label >= class_count()) throw ValidationError("label outside the class name table");
  }
  if (!info.empty() && static_cast<Eigen::Index>(info.size()) != rows())
    throw ValidationError("row info count does not match rows");
}

void Dataset::append(const PropertyVector& pv, RowInfo row_info, int label) {
  features.conservativeResize(rows() + 1, Eigen::NoChange);
  features.row(rows() - 1) = pv.values.transpose();
  info.push_back(std::move(row_info));
  if (label >= 0) labels.push_back(label);
}

Dataset Dataset::subset(std::span<const Eigen::Index> row_indices) const {
  Dataset out;
  out.class_names = class_names;
  out.features.resize(static_cast<Eigen::Index>(row_indices.size()), features.cols());
  for (std::size_t i = 0; i < row_indices.size(); ++i) {
    const auto r = row_indices[i];
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(r);
    if (!labels.empty()) out.labels.push_back(labels[r]);
    if (!info.empty()) out.info.push_back(info[r]);
  }
  return out;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& x, std::span<const int> columns) {
  Eigen::MatrixXd out(x.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) out.col(static_cast<Eigen::Index>(j)) = x.col(columns[j]);
  return out;
}

Dataset sample_dataset(const GeneratorSpec& spec, std::size_t count, std::uint64_t seed, unsigned threads,
                       std::vector<Graph>* graphs) {
  spec.validate();
  constexpr int kMaxRedraws = 10000;
  std::vector<PropertyVector> vectors(count);
  std::vector<Graph> drawn(count);
  parallel_for(count, threads, [&](std::size_t i) {
    Rng rng(stream_seed(seed, i));
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
      Graph g = generate(spec, rng);
      if (!is_connected(g)) continue;
      vectors[i] = compute_property_vector(g);
      drawn[i] = std::move(g);
      return;
    }
    throw SamplingError("no connected graph after " + std::to_string(kMaxRedraws) + " draws", kMaxRedraws);
  });
  Dataset d;
  d.features.resize(static_cast<Eigen::Index>(count), kPropertyCount);
  d.info.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    d.features.row(static_cast<Eigen::Index>(i)) = vectors[i].values.transpose();
    d.info.push_back({to_string(spec.kind()), stream_seed(seed, i), spec.n});
  }
  if (graphs) *graphs = std::move(drawn);
  return d;
}

}  // namespace gspace::analytics
