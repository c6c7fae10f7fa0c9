#pragma once

#include "gspace/graph.hpp"
#include "gspace/rng.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gspace {

enum class GeneratorKind { ER, SBM, NWS, GEOMETRIC, BA };

std::string to_string(GeneratorKind kind);
GeneratorKind parse_generator_kind(const std::string& name);

struct ErParams {
  double p = 0.5;
};

struct SbmParams {
  std::vector<int> block_of;      // block index of every vertex
  Eigen::MatrixXd probabilities;  // symmetric, entries in [0, 1]
};

struct NwsParams {
  int k = 2;                // ring degree, even
  double shortcut_p = 0.0;  // shortcut probability per lattice edge
};

struct GeometricParams {
  double radius = 0.5;
};

struct BaParams {
  int m = 1;
};

using GeneratorParams = std::variant<ErParams, SbmParams, NwsParams, GeometricParams, BaParams>;

/// Fully parameterized, seeded generator configuration.
struct GeneratorSpec {
  int n = 0;
  GeneratorParams params = ErParams{};
  std::uint64_t seed = 0;

  GeneratorKind kind() const { return static_cast<GeneratorKind>(params.index()); }
  /// Throws ValidationError if any parameter is outside its domain.
  void validate() const;
};

Graph gen_er(int n, double p, Rng& rng);
Graph gen_sbm(int n, const std::vector<int>& block_of, const Eigen::MatrixXd& probabilities, Rng& rng);
Graph gen_nws(int n, int k, double shortcut_p, Rng& rng);
Graph gen_geometric(int n, double radius, Rng& rng);
Graph gen_ba(int n, int m, Rng& rng);

inline Graph gen_er(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return gen_er(n, p, rng);
}
inline Graph gen_sbm(int n, const std::vector<int>& block_of, const Eigen::MatrixXd& probabilities,
                     std::uint64_t seed) {
  Rng rng(seed);
  return gen_sbm(n, block_of, probabilities, rng);
}
inline Graph gen_nws(int n, int k, double shortcut_p, std::uint64_t seed) {
  Rng rng(seed);
  return gen_nws(n, k, shortcut_p, rng);
}
inline Graph gen_geometric(int n, double radius, std::uint64_t seed) {
  Rng rng(seed);
  return gen_geometric(n, radius, rng);
}
inline Graph gen_ba(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  return gen_ba(n, m, rng);
}

/// Draws one graph, consuming randomness from rng.
Graph generate(const GeneratorSpec& spec, Rng& rng);
/// Draws one graph from Rng(spec.seed).
Graph generate(const GeneratorSpec& spec);

/// Equal-as-possible contiguous blocks: the first n % l blocks get one extra vertex.
std::vector<int> equal_blocks(int n, int blocks);

/// P(|X - Y| <= r) for X, Y uniform on the unit square, 0 <= r <= sqrt(2).
double unit_square_distance_cdf(double r);

/// Expected edge density of the model (exact for ER/SBM/NWS/BA, the
/// unit-square distance CDF for GEOMETRIC).
double expected_density(const GeneratorSpec& spec);

/// Returns a copy of spec with its free density parameter set so the expected
/// density is as close to target as the model allows: ER p, SBM off-diagonal
/// entries (diagonal kept), NWS shortcut probability, GEOMETRIC radius, BA m.
GeneratorSpec tune_density(GeneratorSpec spec, double target);

/// Open density interval (low, high).
struct DensityBand {
  double low = 0.47;
  double high = 0.52;
  double center() const { return 0.5 * (low + high); }
  bool contains(double density) const { return density > low && density < high; }
};

struct BandSample {
  Graph graph;
  std::size_t attempts = 0;
};

/// Rejection sampler: tunes the template toward the band center, then draws
/// from Rng(seed) until a connected graph with density inside the open band
/// appears. Throws SamplingError after max_tries draws.
BandSample sample_in_density_band(const GeneratorSpec& tmpl, DensityBand band, std::size_t max_tries,
                                  std::uint64_t seed);

/// Random SBM probability matrix: diagonal uniform on [0.65, 0.85], one shared
/// off-diagonal value chosen so the expected density equals target (clipped to [0, 1]).
Eigen::MatrixXd random_sbm_matrix(const std::vector<int>& block_of, int blocks, double target, Rng& rng);

/// One class of a labeled generator dataset.
struct ClassSpec {
  std::string label;
  GeneratorSpec base;
  std::size_t count = 0;
  int sbm_matrices = 0;  // SBM only: number of random P matrices sharing `count`
};

/// The eight classes used for generator classification: ER, SBM with 2..5
/// blocks, GE (geometric), WS (Newman-Watts small world) and BA.
std::vector<ClassSpec> classification_suite(int n, std::size_t per_class, std::uint64_t seed);

}  // namespace gspace
