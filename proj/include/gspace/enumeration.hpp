#pragma once

#include "gspace/correlation_matrix.hpp"
#include "gspace/graph.hpp"
#include "gspace/numerics.hpp"
#include "gspace/properties.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace gspace {

inline constexpr int kMinEnumerationOrder = 4;
inline constexpr int kMaxEnumerationOrder = 7;

/// A labeled graph on n <= 7 vertices as a bit mask over the C(n, 2)
/// lexicographically ordered vertex pairs (0,1), (0,2), ..., (n-2,n-1).
struct GraphCode {
  int n = 0;
  std::uint32_t mask = 0;
};

/// Vertex pairs in bit order.
std::vector<Edge> pair_order(int n);
Graph decode(GraphCode code);
/// Connectivity straight from the mask (bit-parallel BFS).
bool mask_connected(int n, std::uint32_t mask);

/// Calls visit(code, graph) for every labeled graph on n vertices in
/// increasing mask order, optionally skipping disconnected ones.
/// Throws ValidationError unless 4 <= n <= 7.
void enumerate_labeled(int n, bool connected_only, const std::function<void(GraphCode, const Graph&)>& visit);

std::uint64_t count_connected(int n, unsigned threads = 1);

/// Exact distribution of one property over a graph family. Values are
/// bucketed at 1e-12 resolution, so the histogram stays small even though
/// isomorphic graphs may differ in the last floating-point bits.
struct PropertyDistribution {
  numerics::RunningMoments moments;
  std::map<double, std::uint64_t> histogram;

  void push(double x);
  void merge(const PropertyDistribution& other);
  double quantile(double q) const;
};

struct ExactPropertyStats {
  int n = 0;
  std::uint64_t total_graphs = 0;
  std::uint64_t connected_graphs = 0;
  std::array<PropertyDistribution, kPropertyCount> properties;
  numerics::CovarianceAccumulator<kPropertyCount> covariance;
};

/// Aggregates the property vectors of every connected labeled graph on n
/// vertices. Mask ranges are reduced independently and merged in range order.
ExactPropertyStats exact_property_stats(int n, unsigned threads = 1);

CorrelationMatrix exact_correlation_matrix(int n, unsigned threads = 1);
/// Correlation matrix from already-computed stats.
CorrelationMatrix correlation_from(const numerics::CovarianceAccumulator<kPropertyCount>& acc);

}  // namespace gspace
