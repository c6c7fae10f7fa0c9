#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace gspace {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Labeled, undirected, simple graph on vertices {0, ..., n-1}.
///
/// Immutable after construction. Keeps three views of the same edge set:
/// the sorted edge list (u < v, lexicographic), sorted neighbor lists, and a
/// packed adjacency bit-row per vertex for O(1) adjacency tests and fast
/// neighborhood intersections.
class Graph {
 public:
  Graph() = default;

  /// Validating constructor. Throws InputError for out-of-range vertices and
  /// ValidationError for self-loops or duplicate pairs (in either orientation).
  static Graph from_edges(int n, std::span<const Edge> edges);

  int n() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adjacency_[v].size()); }

  bool has_edge(Vertex u, Vertex v) const {
    return (bits_[u * words_ + (v >> 6)] >> (v & 63)) & 1u;
  }

  /// Packed adjacency row of v; bit w of word (w / 64) is set iff (v, w) is an edge.
  std::span<const std::uint64_t> row_bits(Vertex v) const {
    return {bits_.data() + static_cast<std::size_t>(v) * words_, words_};
  }
  std::size_t words_per_row() const noexcept { return words_; }

  /// Labeled-graph identity: same vertex count and same edge set.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::uint64_t> bits_;
};

Graph complete_graph(int n);
Graph path_graph(int n);
Graph cycle_graph(int n);
/// Star S_n: vertex 0 is the hub, joined to 1..n-1.
Graph star_graph(int n);
Graph empty_graph(int n);

struct DegreeStats {
  std::vector<int> degrees;
  int max_degree = 0;
  std::vector<int> degree_sequence;  // ascending
};

DegreeStats degree_stats(const Graph& g);

/// Hop counts between vertices; unreachable pairs hold kUnreachable.
using DistanceMatrix = Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;
inline constexpr std::int32_t kUnreachable = -1;

/// BFS hop distances from one source; unreachable vertices get kUnreachable.
std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source);
DistanceMatrix all_pairs_distances(const Graph& g);

bool is_connected(const Graph& g);

inline constexpr int kDefaultIsomorphismCap = 12;

/// Exact isomorphism test by backtracking over vertex orderings, pruned by a
/// (degree, sorted neighbor degrees) vertex coloring. Throws SizeLimitError
/// when either graph has more than max_n vertices.
bool are_isomorphic(const Graph& a, const Graph& b, int max_n = kDefaultIsomorphismCap);

template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_matrix(const Graph& g) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(g.n(), g.n());
  for (const auto& [u, v] : g.edges()) {
    a(u, v) = Scalar(1);
    a(v, u) = Scalar(1);
  }
  return a;
}

/// Combinatorial Laplacian D - A.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> laplacian_matrix(const Graph& g) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> l = -adjacency_matrix<Scalar>(g);
  for (Vertex v = 0; v < g.n(); ++v) l(v, v) = Scalar(g.degree(v));
  return l;
}

/// Edge-list text format: a header line `n m`, then m lines `u v` with u < v.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace gspace
