#pragma once

#include "gspace/analytics/dataset.hpp"
#include "gspace/experiments/config.hpp"
#include "gspace/generators.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gspace::experiments {

inline constexpr const char* kVersion = "1.0.0";

/// trends, connectivity, groundtruth, correlations, stability, collisions,
/// collision-hunt, predict, importance, classify, sweep, embed.
const std::vector<std::string>& experiment_ids();

struct RunResult {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // human-readable lines, also printed
};

/// Runs config.experiment and writes its tables into config.out.
/// Throws ConfigError for an unknown experiment or invalid settings.
RunResult run(const ExperimentConfig& config, std::ostream& log);

/// Labeled dataset with `count` connected graphs per class whose density lies
/// inside the open band. Graph g of a class draws from
/// stream_seed(class seed, g); SBM classes cycle through `sbm_matrices`
/// random matrices, matrix m drawn from Rng(child_seed(class seed, m)).
/// Classes with count 0 are skipped with a warning on `warnings`.
/// Sampling failures are rethrown as SamplingError naming the class.
analytics::Dataset dataset_build(const std::vector<ClassSpec>& specs, DensityBand band, unsigned threads = 1,
                                 std::ostream* warnings = nullptr, std::size_t max_tries = 100000);

/// The eight-generator classification dataset of config.per_class graphs per
/// class on config.n[0] vertices, or the dataset named by config.dataset.
analytics::Dataset classification_dataset(const ExperimentConfig& config, std::ostream* warnings = nullptr);

/// Writes the classification dataset as dataset.{csv,json} into config.out.
RunResult build_dataset_file(const ExperimentConfig& config, std::ostream& log);

Provenance provenance_of(const ExperimentConfig& config);

}  // namespace gspace::experiments
