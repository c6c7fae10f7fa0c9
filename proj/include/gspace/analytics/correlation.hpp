#pragma once

#include "gspace/analytics/dataset.hpp"
#include "gspace/correlation_matrix.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace gspace::analytics {

/// Pairwise Pearson correlation of the dataset columns. Entries touching a
/// constant column are NaN and the column is flagged degenerate.
/// Throws ValidationError for fewer than two rows.
CorrelationMatrix correlation_matrix(const Dataset& d);

/// Spread of one correlation entry across repeats at one sample size.
/// Statistics cover the repeats where the entry is defined.
struct EntrySpread {
  int defined = 0;
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
  double range() const { return max - min; }
};

struct StabilityLevel {
  std::size_t sample_size = 0;
  std::vector<CorrelationMatrix> matrices;  // one per repeat
  std::array<std::array<EntrySpread, kPropertyCount>, kPropertyCount> spread{};
};

struct StabilityResult {
  std::vector<StabilityLevel> levels;  // in the order of the requested sizes

  /// True when the pair (i, j) was defined in every repeat at every level.
  bool pair_defined(int i, int j) const;
  /// Standard deviation of entry (i, j) never increases from one level to the next.
  bool pair_non_increasing(int i, int j) const;
};

/// For each size s (level index k) and repeat r, samples s connected graphs
/// with seed child_seed(child_seed(seed, k), r) and records the correlation
/// matrix. Throws ValidationError when sizes is empty or repeats < 1.
StabilityResult stability_test(const GeneratorSpec& gen, const std::vector<std::size_t>& sizes, int repeats,
                               std::uint64_t seed, unsigned threads = 1);

}  // namespace gspace::analytics
