#include "gspace/enumeration.hpp"

#include "gspace/errors.hpp"
#include "gspace/parallel.hpp"

#include <bit>
#include <cmath>

namespace gspace {

namespace {

void require_order(int n) {
  if (n < kMinEnumerationOrder || n > kMaxEnumerationOrder)
    throw ValidationError("labeled-graph enumeration supports 4 <= n <= 7, got " + std::to_string(n));
}

std::uint32_t mask_limit(int n) { return std::uint32_t{1} << (n * (n - 1) / 2); }

// Vertex adjacency bit rows from a pair mask.
std::array<std::uint32_t, kMaxEnumerationOrder> rows_of(int n, std::uint32_t mask) {
  std::array<std::uint32_t, kMaxEnumerationOrder> rows{};
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if ((mask >> bit) & 1u) {
        rows[u] |= 1u << v;
        rows[v] |= 1u << u;
      }
    }
  }
  return rows;
}

constexpr std::uint32_t kChunkBits = 14;

}  // namespace

std::vector<Edge> pair_order(int n) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return pairs;
}

Graph decode(GraphCode code) {
  if (code.n < 1 || code.n > kMaxEnumerationOrder) throw ValidationError("graph code order out of range");
  if (code.n * (code.n - 1) / 2 < 32 && code.mask >= mask_limit(code.n))
    throw ValidationError("graph code mask out of range");
  const auto pairs = pair_order(code.n);
  std::vector<Edge> edges;
  for (std::size_t b = 0; b < pairs.size(); ++b)
    if ((code.mask >> b) & 1u) edges.push_back(pairs[b]);
  return Graph::from_edges(code.n, edges);
}

bool mask_connected(int n, std::uint32_t mask) {
  const auto rows = rows_of(n, mask);
  std::uint32_t seen = 1u, frontier = 1u;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= rows[std::countr_zero(f)];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (1u << n) - 1u;
}

void enumerate_labeled(int n, bool connected_only, const std::function<void(GraphCode, const Graph&)>& visit) {
  require_order(n);
  const std::uint32_t limit = mask_limit(n);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (connected_only && !mask_connected(n, mask)) continue;
    visit(GraphCode{n, mask}, decode(GraphCode{n, mask}));
  }
}

std::uint64_t count_connected(int n, unsigned threads) {
  require_order(n);
  const std::uint32_t limit = mask_limit(n);
  const std::size_t chunks = (limit + (1u << kChunkBits) - 1) >> kChunkBits;
  std::vector<std::uint64_t> partial(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    const auto lo = static_cast<std::uint32_t>(c << kChunkBits);
    const std::uint32_t hi = std::min(limit, lo + (1u << kChunkBits));
    for (std::uint32_t mask = lo; mask < hi; ++mask) partial[c] += mask_connected(n, mask);
  });
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

void PropertyDistribution::push(double x) {
  moments.push(x);
  ++histogram[std::round(x * 1e12) / 1e12];
}

void PropertyDistribution::merge(const PropertyDistribution& other) {
  moments.merge(other.moments);
  for (const auto& [value, count] : other.histogram) histogram[value] += count;
}

double PropertyDistribution::quantile(double q) const {
  if (moments.count == 0) return std::nan("");
  // Type-7 quantile over the multiset encoded by the histogram.
  const double pos = q * static_cast<double>(moments.count - 1);
  const auto lo_rank = static_cast<std::uint64_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(lo_rank);
  auto value_at = [&](std::uint64_t rank) {
    std::uint64_t seen = 0;
    for (const auto& [value, count] : histogram) {
      seen += count;
      if (rank < seen) return value;
    }
    return histogram.rbegin()->first;
  };
  const double lo = value_at(lo_rank);
  return frac == 0.0 ? lo : lo + frac * (value_at(lo_rank + 1) - lo);
}

ExactPropertyStats exact_property_stats(int n, unsigned threads) {
  require_order(n);
  const std::uint32_t limit = mask_limit(n);
  const std::size_t chunks = (limit + (1u << kChunkBits) - 1) >> kChunkBits;
  std::vector<ExactPropertyStats> partial(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    auto& acc = partial[c];
    const auto lo = static_cast<std::uint32_t>(c << kChunkBits);
    const std::uint32_t hi = std::min(limit, lo + (1u << kChunkBits));
    for (std::uint32_t mask = lo; mask < hi; ++mask) {
      ++acc.total_graphs;
      if (!mask_connected(n, mask)) continue;
      ++acc.connected_graphs;
      const PropertyVector pv = compute_property_vector(decode(GraphCode{n, mask}));
      for (int p = 0; p < kPropertyCount; ++p) acc.properties[p].push(pv.values(p));
      acc.covariance.push(pv.values);
    }
  });
  ExactPropertyStats stats;
  stats.n = n;
  for (const auto& part : partial) {
    stats.total_graphs += part.total_graphs;
    stats.connected_graphs += part.connected_graphs;
    for (int p = 0; p < kPropertyCount; ++p) stats.properties[p].merge(part.properties[p]);
    stats.covariance.merge(part.covariance);
  }
  return stats;
}

CorrelationMatrix correlation_from(const numerics::CovarianceAccumulator<kPropertyCount>& acc) {
  CorrelationMatrix out;
  out.values = acc.correlation();
  for (int p = 0; p < kPropertyCount; ++p) out.degenerate[p] = !(acc.count > 1 && acc.min(p) != acc.max(p));
  return out;
}

CorrelationMatrix exact_correlation_matrix(int n, unsigned threads) {
  return correlation_from(exact_property_stats(n, threads).covariance);
}

}  // namespace gspace
