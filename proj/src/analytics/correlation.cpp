#include "gspace/analytics/correlation.hpp"

#include "gspace/errors.hpp"
#include "gspace/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gspace::analytics {

CorrelationMatrix correlation_matrix(const Dataset& d) {
  d.validate();
  if (d.rows() < 2) throw ValidationError("correlation needs at least 2 rows");
  CorrelationMatrix out;
  for (int p = 0; p < kPropertyCount; ++p) {
    const auto col = d.features.col(p);
    out.degenerate[p] = col.minCoeff() == col.maxCoeff();
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < kPropertyCount; ++i) {
    out.values(i, i) = out.degenerate[i] ? nan : 1.0;
    for (int j = i + 1; j < kPropertyCount; ++j) {
      const auto r = numerics::pearson(d.features.col(i), d.features.col(j));
      out.values(i, j) = out.values(j, i) = r ? std::clamp(*r, -1.0, 1.0) : nan;
    }
  }
  return out;
}

bool StabilityResult::pair_defined(int i, int j) const {
  return std::all_of(levels.begin(), levels.end(), [&](const StabilityLevel& level) {
    return level.spread[i][j].defined == static_cast<int>(level.matrices.size());
  });
}

bool StabilityResult::pair_non_increasing(int i, int j) const {
  for (std::size_t k = 1; k < levels.size(); ++k)
    if (levels[k].spread[i][j].stddev > levels[k - 1].spread[i][j].stddev) return false;
  return true;
}

StabilityResult stability_test(const GeneratorSpec& gen, const std::vector<std::size_t>& sizes, int repeats,
                               std::uint64_t seed, unsigned threads) {
  if (sizes.empty()) throw ValidationError("stability test needs at least one sample size");
  if (repeats < 1) throw ValidationError("stability test needs at least one repeat");
  StabilityResult result;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    StabilityLevel level;
    level.sample_size = sizes[k];
    const std::uint64_t level_seed = child_seed(seed, k);
    for (int r = 0; r < repeats; ++r) {
      const Dataset d = sample_dataset(gen, sizes[k], child_seed(level_seed, static_cast<std::uint64_t>(r)), threads);
      level.matrices.push_back(correlation_matrix(d));
    }
    for (int i = 0; i < kPropertyCount; ++i) {
      for (int j = 0; j < kPropertyCount; ++j) {
        numerics::RunningMoments m;
        for (const auto& c : level.matrices)
          if (c.defined(i, j)) m.push(c.values(i, j));
        EntrySpread s;
        s.defined = static_cast<int>(m.count);
        if (m.count > 0) {
          s.min = m.min;
          s.max = m.max;
          s.stddev = m.count > 1 ? m.stddev() : 0.0;
        }
        level.spread[i][j] = s;
      }
    }
    result.levels.push_back(std::move(level));
  }
  return result;
}

}  // namespace gspace::analytics
