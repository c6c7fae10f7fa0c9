#include "gspace/analytics/collisions.hpp"

#include "gspace/errors.hpp"

#include <cmath>
#include <map>

namespace gspace::analytics {

namespace {

std::uint64_t choose(std::uint64_t k, std::uint64_t r) {
  if (k < r) return 0;
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (k - r + i) / i;
  return out;
}

PairVerdict screen(const Graph& a, const Graph& b) {
  if (a == b) return PairVerdict::SameEdgeSet;
  if (degree_stats(a).degree_sequence != degree_stats(b).degree_sequence) return PairVerdict::DifferentDegreeSequence;
  if (a.n() > 12) return PairVerdict::DifferentEdgeSet;
  return are_isomorphic(a, b) ? PairVerdict::Isomorphic : PairVerdict::NonIsomorphic;
}

}  // namespace

double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::round(x * scale) / scale;
}

RoundedKey rounded_key(const Eigen::Ref<const Eigen::RowVectorXd>& row, int decimals) {
  if (row.size() != kPropertyCount) throw ValidationError("rounded key needs a 12-vector");
  const double scale = std::pow(10.0, decimals);
  RoundedKey key{};
  for (int p = 0; p < kPropertyCount; ++p) key[p] = std::llround(row(p) * scale);
  return key;
}

const char* to_string(PairVerdict v) {
  switch (v) {
    case PairVerdict::Unverified: return "unverified";
    case PairVerdict::SameEdgeSet: return "same_edge_set";
    case PairVerdict::DifferentDegreeSequence: return "different_degree_sequence";
    case PairVerdict::NonIsomorphic: return "non_isomorphic";
    case PairVerdict::Isomorphic: return "isomorphic";
    case PairVerdict::DifferentEdgeSet: return "different_edge_set";
  }
  return "unknown";
}

CollisionReport find_collisions(const Dataset& d, int decimals, std::span<const Graph> graphs) {
  d.validate();
  if (decimals < 0) throw ValidationError("decimals must be non-negative");
  if (!graphs.empty() && static_cast<Eigen::Index>(graphs.size()) != d.rows())
    throw ValidationError("graph count does not match dataset rows");

  std::map<RoundedKey, std::vector<Eigen::Index>> index;
  for (Eigen::Index r = 0; r < d.rows(); ++r) index[rounded_key(d.features.row(r), decimals)].push_back(r);

  CollisionReport report;
  report.decimals = decimals;
  for (auto& [key, members] : index) {
    if (members.size() < 2) continue;
    const auto k = static_cast<std::uint64_t>(members.size());
    report.pairs += choose(k, 2);
    report.triples += choose(k, 3);
    report.quadruples += choose(k, 4);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        CollisionPair pair{members[i], members[j], PairVerdict::Unverified};
        if (!graphs.empty()) pair.verdict = screen(graphs[members[i]], graphs[members[j]]);
        report.checked.push_back(pair);
      }
    }
    report.groups.push_back({key, std::move(members)});
  }
  return report;
}

HuntResult collision_search_until_pair(const GeneratorSpec& gen, int decimals, std::uint64_t seed, std::size_t cap) {
  gen.validate();
  if (decimals < 0) throw ValidationError("decimals must be non-negative");
  std::map<RoundedKey, std::size_t> seen;
  for (std::size_t i = 0; i < cap; ++i) {
    const Dataset row = sample_dataset(gen, 1, stream_seed(seed, i));
    const auto [it, inserted] = seen.emplace(rounded_key(row.features.row(0), decimals), i);
    if (!inserted) return {i + 1, it->second};
  }
  throw SamplingError("no collision within " + std::to_string(cap) + " graphs", static_cast<int>(cap));
}

}  // namespace gspace::analytics
