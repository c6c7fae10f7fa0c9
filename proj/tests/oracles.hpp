#pragma once

// Brute-force reference implementations of the twelve properties. They share
// no code with the library beyond the Graph container: distances come from
// Floyd-Warshall, betweenness from explicit path counting, edge connectivity
// from a scan over all vertex bipartitions, resistance from the Laplacian
// pseudoinverse and spectra from Eigen's own solver.

#include "gspace/graph.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using gspace::Graph;

inline Eigen::MatrixXi adjacency(const Graph& g) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(g.n(), g.n());
  for (auto [u, v] : g.edges()) a(u, v) = a(v, u) = 1;
  return a;
}

inline Eigen::MatrixXi floyd_warshall(const Graph& g) {
  const int n = g.n();
  constexpr int inf = 1 << 20;
  Eigen::MatrixXi d = Eigen::MatrixXi::Constant(n, n, inf);
  for (int i = 0; i < n; ++i) d(i, i) = 0;
  for (auto [u, v] : g.edges()) d(u, v) = d(v, u) = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

inline double gcc(const Graph& g) {
  const auto a = adjacency(g);
  const int n = g.n();
  long triangles = 0, triples = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) triangles += a(i, j) * a(j, k) * a(i, k);
  // A connected triple is a path u - v - w centred at v.
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      for (int w = u + 1; w < n; ++w) triples += a(v, u) * a(v, w);
  return triples == 0 ? 0.0 : 3.0 * triangles / triples;
}

inline double ascc(const Graph& g) {
  const auto a = adjacency(g);
  const int n = g.n();
  const Eigen::VectorXi deg = a.rowwise().sum();
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    long num = 0, den = 0;
    for (int u = 0; u < n; ++u) {
      for (int w = u + 1; w < n; ++w) {
        if (!a(v, u) || !a(v, w)) continue;
        // Squares v-u-x-w-v.
        int q = 0;
        for (int x = 0; x < n; ++x)
          if (x != v && a(u, x) && a(w, x)) ++q;
        const int eta = 1 + q + a(u, w);
        num += q;
        den += static_cast<long>(deg(u) - eta) * (deg(w) - eta) + q;
      }
    }
    if (den > 0) total += static_cast<double>(num) / den;
  }
  return total / n;
}

inline double apl_raw(const Graph& g) {
  const auto d = floyd_warshall(g);
  const int n = g.n();
  return static_cast<double>(d.sum()) / (static_cast<double>(n) * (n - 1));
}

inline double apl_norm(const Graph& g) { return apl_raw(g) / ((g.n() + 1) / 3.0); }

inline double assortativity(const Graph& g) {
  std::vector<double> x, y;
  for (auto [u, v] : g.edges()) {
    x.push_back(g.degree(u));
    y.push_back(g.degree(v));
    x.push_back(g.degree(v));
    y.push_back(g.degree(u));
  }
  const double m = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx < 1e-12 || syy < 1e-12) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

inline double density(const Graph& g) {
  return 2.0 * static_cast<double>(g.edge_count()) / (static_cast<double>(g.n()) * (g.n() - 1));
}

inline double diameter_norm(const Graph& g) { return floyd_warshall(g).maxCoeff() / (g.n() - 1.0); }

// Smallest cut over every vertex bipartition (S, V \ S) with vertex 0 in S.
inline int edge_connectivity(const Graph& g) {
  const int n = g.n();
  int best = static_cast<int>(g.edge_count());
  for (std::uint32_t s = 0; s < (1u << (n - 1)); ++s) {
    const std::uint32_t side = (s << 1) | 1u;  // vertex 0 always in S, S != V
    if (side == (1u << n) - 1) continue;
    int cut = 0;
    for (auto [u, v] : g.edges()) cut += ((side >> u) & 1u) != ((side >> v) & 1u);
    best = std::min(best, cut);
  }
  return best;
}

inline double edge_connectivity_norm(const Graph& g) { return oracle::edge_connectivity(g) / (g.n() - 1.0); }

inline double freeman(const std::vector<double>& s) {
  double top = s[0];
  for (double x : s) top = std::max(top, x);
  double sum = 0;
  for (double x : s) sum += top - x;
  return sum;
}

inline std::vector<double> closeness(const Graph& g) {
  const auto d = floyd_warshall(g);
  std::vector<double> out;
  for (int v = 0; v < g.n(); ++v) out.push_back((g.n() - 1.0) / d.row(v).sum());
  return out;
}

// Shortest-path counts by dynamic programming over distance layers.
inline Eigen::MatrixXd path_counts(const Graph& g, const Eigen::MatrixXi& d) {
  const int n = g.n();
  const auto a = adjacency(g);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(n, n);
  for (int s = 0; s < n; ++s) {
    sigma(s, s) = 1;
    for (int layer = 1; layer < n; ++layer)
      for (int t = 0; t < n; ++t)
        if (d(s, t) == layer)
          for (int u = 0; u < n; ++u)
            if (a(u, t) && d(s, u) == layer - 1) sigma(s, t) += sigma(s, u);
  }
  return sigma;
}

inline std::vector<double> betweenness(const Graph& g) {
  const int n = g.n();
  const auto d = floyd_warshall(g);
  const auto sigma = path_counts(g, d);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  for (int v = 0; v < n; ++v)
    for (int s = 0; s < n; ++s)
      for (int t = s + 1; t < n; ++t)
        if (s != v && t != v && d(s, v) + d(v, t) == d(s, t)) out[v] += sigma(s, v) * sigma(v, t) / sigma(s, t);
  return out;
}

inline std::vector<double> eigenvector(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(g).cast<double>());
  Eigen::VectorXd v = es.eigenvectors().col(g.n() - 1).cwiseAbs();
  v /= v.norm();
  return {v.data(), v.data() + v.size()};
}

// Freeman maxima of the star S_n in closed form.
inline double star_closeness_sum(int n) { return (n - 1.0) * (n - 2.0) / (2.0 * n - 3.0); }
inline double star_betweenness_sum(int n) { return (n - 1.0) * (n - 1.0) * (n - 2.0) / 2.0; }
inline double star_eigenvector_sum(int n) {
  return (n - 1.0) * (1.0 / std::sqrt(2.0) - 1.0 / std::sqrt(2.0 * (n - 1.0)));
}

inline double closeness_centralization(const Graph& g) { return freeman(closeness(g)) / star_closeness_sum(g.n()); }
inline double betweenness_centralization(const Graph& g) {
  return freeman(betweenness(g)) / star_betweenness_sum(g.n());
}
inline double eigenvector_centralization(const Graph& g) {
  return freeman(eigenvector(g)) / star_eigenvector_sum(g.n());
}

// Sum of pairwise effective resistances from the Laplacian pseudoinverse.
inline double resistance_total(const Graph& g) {
  const int n = g.n();
  const Eigen::MatrixXd a = adjacency(g).cast<double>();
  Eigen::MatrixXd lap = -a;
  lap.diagonal() = a.rowwise().sum();
  const Eigen::MatrixXd j = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd pinv = (lap + j).inverse() - j;
  double total = 0;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) total += pinv(u, u) + pinv(v, v) - 2 * pinv(u, v);
  return total;
}

inline double resistance_norm(const Graph& g) { return (g.n() - 1.0) / resistance_total(g); }

inline double spectral_radius_norm(const Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency(g).cast<double>());
  return es.eigenvalues().cwiseAbs().maxCoeff() / (g.n() - 1.0);
}

/// All twelve, in the library's column order.
inline std::array<double, 12> property_vector(const Graph& g) {
  return {oracle::gcc(g),
          oracle::ascc(g),
          oracle::apl_norm(g),
          oracle::assortativity(g),
          oracle::density(g),
          oracle::diameter_norm(g),
          oracle::edge_connectivity_norm(g),
          oracle::closeness_centralization(g),
          oracle::betweenness_centralization(g),
          oracle::eigenvector_centralization(g),
          oracle::resistance_norm(g),
          oracle::spectral_radius_norm(g)};
}

}  // namespace oracle
