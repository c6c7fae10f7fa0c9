#pragma once

#include "gspace/analytics/dataset.hpp"
#include "gspace/generators.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gspace::analytics {

/// Property vector rounded half away from zero to a fixed number of decimals,
/// stored as scaled integers so equality is exact.
using RoundedKey = std::array<std::int64_t, kPropertyCount>;

double round_half_away(double x, int decimals);
RoundedKey rounded_key(const Eigen::Ref<const Eigen::RowVectorXd>& row, int decimals);

enum class PairVerdict {
  Unverified,              // graphs not supplied
  SameEdgeSet,             // the same labeled graph twice
  DifferentDegreeSequence, // non-isomorphic, certified by degree sequences
  NonIsomorphic,           // same degree sequence, exhaustive check failed to map
  Isomorphic,              // different labeled graphs, same unlabeled graph
  DifferentEdgeSet,        // same degree sequence, too large for the isomorphism check
};

const char* to_string(PairVerdict v);

struct CollisionPair {
  Eigen::Index first = 0;
  Eigen::Index second = 0;
  PairVerdict verdict = PairVerdict::Unverified;
};

struct CollisionGroup {
  RoundedKey key{};
  std::vector<Eigen::Index> members;  // ascending row indices
};

struct CollisionReport {
  int decimals = 0;
  std::vector<CollisionGroup> groups;  // only groups with at least two members, ordered by key
  std::uint64_t pairs = 0;             // sum of C(k,2) over groups of size k
  std::uint64_t triples = 0;           // sum of C(k,3)
  std::uint64_t quadruples = 0;        // sum of C(k,4)
  std::vector<CollisionPair> checked;  // every colliding pair, with its verdict
};

/// Groups rows whose rounded property vectors coincide. When graphs are given
/// (one per row) each colliding pair is screened by edge set, degree sequence
/// and, for n <= 12, exhaustive isomorphism.
/// Throws ValidationError for negative decimals or a graph count mismatch.
CollisionReport find_collisions(const Dataset& d, int decimals, std::span<const Graph> graphs = {});

struct HuntResult {
  std::size_t generated = 0;  // graphs drawn up to and including the repeat
  std::size_t first = 0;      // index of the earlier graph with the same key
};

/// Draws connected graphs from gen one at a time (graph i from
/// Rng(stream_seed(seed, i))) until a rounded property vector repeats.
/// Throws SamplingError once `cap` graphs have been drawn without a repeat.
HuntResult collision_search_until_pair(const GeneratorSpec& gen, int decimals, std::uint64_t seed,
                                       std::size_t cap = 1'000'000);

}  // namespace gspace::analytics
