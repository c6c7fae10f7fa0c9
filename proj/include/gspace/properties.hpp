#pragma once

#include "gspace/graph.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <string_view>

namespace gspace {

/// The twelve graph properties, in the fixed order used by every vector,
/// CSV column set and matrix in this library.
enum class Property : int {
  Gcc,                // global clustering coefficient
  Ascc,               // average square clustering
  Apl,                // average path length / ((n + 1) / 3)
  Assortativity,      // degree assortativity r, in [-1, 1]
  Density,            // 2|E| / (n (n - 1))
  Diameter,           // diameter / (n - 1)
  EdgeConnectivity,   // edge connectivity / (n - 1)
  Closeness,          // Freeman closeness centralization
  Betweenness,        // Freeman betweenness centralization
  Eigenvector,        // Freeman eigenvector centralization
  Resistance,         // (n - 1) / effective graph resistance
  SpectralRadius,     // adjacency spectral radius / (n - 1)
};

inline constexpr int kPropertyCount = 12;
inline constexpr std::array<std::string_view, kPropertyCount> kPropertyNames = {
    "gcc", "ascc", "apl", "r", "den", "diam", "ce", "cc", "cb", "cei", "rg", "rho"};

constexpr int index_of(Property p) { return static_cast<int>(p); }
constexpr std::string_view property_name(Property p) { return kPropertyNames[index_of(p)]; }
/// Accepts the short CSV names above; throws InputError otherwise.
Property parse_property(std::string_view name);

using PropertyArray = Eigen::Matrix<double, kPropertyCount, 1>;

/// Normalized properties of one connected graph.
struct PropertyVector {
  int n = 0;
  PropertyArray values = PropertyArray::Zero();
  /// Set when endpoint-degree variance is zero (regular graphs); r is then 0.
  bool assortativity_degenerate = false;

  double operator[](Property p) const { return values(index_of(p)); }
  double& operator[](Property p) { return values(index_of(p)); }
};

struct AssortativityResult {
  double value = 0.0;
  bool degenerate = false;
};

enum class Centrality { Closeness, Betweenness, Eigenvector };

/// Freeman maxima for order n: the centralization sums of the star S_n,
/// computed by running the same score code on the star.
struct NormalizationContext {
  int n = 0;
  double star_closeness_denominator = 0.0;
  double star_betweenness_denominator = 0.0;
  double star_eigenvector_denominator = 0.0;

  /// Cached per order; throws DomainError for n < 3.
  static const NormalizationContext& for_order(int n);
  double denominator(Centrality kind) const;
};

// Every function below requires a connected graph and throws DomainError
// otherwise.

double global_clustering(const Graph& g);
double average_square_clustering(const Graph& g);
/// Unnormalized mean shortest-path length over ordered vertex pairs.
double average_path_length(const Graph& g);
double apl_norm(const Graph& g);
AssortativityResult assortativity(const Graph& g);
double density(const Graph& g);
int diameter(const Graph& g);
double diameter_norm(const Graph& g);
/// Global edge connectivity: min over t != 0 of the unit-capacity max-flow 0 -> t.
int edge_connectivity(const Graph& g);
double edge_connectivity_norm(const Graph& g);

/// Per-vertex scores before centralization.
Eigen::VectorXd closeness_scores(const Graph& g);
/// Brandes; unordered source-target pairs, endpoints excluded, unnormalized.
Eigen::VectorXd betweenness_scores(const Graph& g);
/// Dominant adjacency eigenvector, unit Euclidean norm, non-negative orientation.
Eigen::VectorXd eigenvector_scores(const Graph& g);

/// Sum over vertices of (max score - score).
double freeman_sum(const Eigen::Ref<const Eigen::VectorXd>& scores);
double centralization(const Graph& g, Centrality kind);

/// R_G = n * sum of reciprocal nonzero Laplacian eigenvalues.
double effective_resistance(const Graph& g);
double effective_resistance_norm(const Graph& g);
/// max |lambda| of the adjacency matrix.
double spectral_radius(const Graph& g);
double spectral_radius_norm(const Graph& g);

/// All twelve properties; requires a connected graph with n >= 3.
PropertyVector compute_property_vector(const Graph& g);

}  // namespace gspace
