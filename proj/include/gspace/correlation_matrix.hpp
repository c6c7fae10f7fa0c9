#pragma once

#include "gspace/properties.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>

namespace gspace {

using PropertyMatrix = Eigen::Matrix<double, kPropertyCount, kPropertyCount>;

/// Pearson correlations between the twelve properties. Entries involving a
/// constant (degenerate) property are NaN.
struct CorrelationMatrix {
  PropertyMatrix values = PropertyMatrix::Identity();
  std::array<bool, kPropertyCount> degenerate{};

  bool defined(int i, int j) const { return !std::isnan(values(i, j)); }
};

}  // namespace gspace
