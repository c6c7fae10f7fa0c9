#include "gspace/properties.hpp"

#include "gspace/errors.hpp"
#include "gspace/numerics.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace gspace {

Property parse_property(std::string_view name) {
  for (int i = 0; i < kPropertyCount; ++i)
    if (kPropertyNames[i] == name) return static_cast<Property>(i);
  throw InputError("unknown property `" + std::string(name) + "`");
}

namespace {

void require_connected(const Graph& g) {
  if (g.n() == 0 || !is_connected(g)) throw DomainError("property is undefined for a disconnected graph");
}

int common_neighbors(const Graph& g, Vertex u, Vertex w) {
  const auto a = g.row_bits(u), b = g.row_bits(w);
  int count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) count += std::popcount(a[i] & b[i]);
  return count;
}

double gcc_unchecked(const Graph& g) {
  long long closed = 0;  // 3 x triangles
  for (const auto& [u, v] : g.edges()) closed += common_neighbors(g, u, v);
  long long triples = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const long long d = g.degree(v);
    triples += d * (d - 1) / 2;
  }
  return triples == 0 ? 0.0 : static_cast<double>(closed) / static_cast<double>(triples);
}

double ascc_unchecked(const Graph& g) {
  double total = 0.0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const auto nbrs = g.neighbors(v);
    if (nbrs.size() < 2) continue;
    long long squares = 0, potential = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        const Vertex u = nbrs[i], w = nbrs[j];
        const long long q = common_neighbors(g, u, w) - 1;  // v itself is common
        const long long eta = 1 + q + (g.has_edge(u, w) ? 1 : 0);
        squares += q;
        potential += (g.degree(u) - eta) * (g.degree(w) - eta) + q;
      }
    }
    if (potential > 0) total += static_cast<double>(squares) / static_cast<double>(potential);
  }
  return total / g.n();
}

double apl_from(const DistanceMatrix& d) {
  const auto n = static_cast<double>(d.rows());
  return static_cast<double>(d.cast<long long>().sum()) / (n * (n - 1.0));
}

AssortativityResult assortativity_unchecked(const Graph& g) {
  // Pearson over the 2|E| ordered endpoint pairs, in exact integer arithmetic.
  using Wide = __int128;
  Wide s1 = 0, s2 = 0, sxy = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    const Wide d = g.degree(v);
    s1 += d * d;
    s2 += d * d * d;
  }
  for (const auto& [u, v] : g.edges()) sxy += Wide(2) * g.degree(u) * g.degree(v);
  const Wide count = Wide(2) * static_cast<Wide>(g.edge_count());
  const Wide variance = count * s2 - s1 * s1;
  if (count == 0 || variance == 0) return {0.0, true};
  const Wide covariance = count * sxy - s1 * s1;
  return {std::clamp(static_cast<double>(covariance) / static_cast<double>(variance), -1.0, 1.0), false};
}

double density_unchecked(const Graph& g) {
  const double n = g.n();
  return n < 2 ? 0.0 : 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

// Unit-capacity max-flow on the undirected graph: arc 2e and 2e+1 are the two
// orientations of edge e and each other's residual partner.
class UnitFlowNetwork {
 public:
  explicit UnitFlowNetwork(const Graph& g) : n_(g.n()), first_(g.n() + 1, 0) {
    for (const auto& [u, v] : g.edges()) {
      ++first_[u + 1];
      ++first_[v + 1];
    }
    for (int v = 0; v < n_; ++v) first_[v + 1] += first_[v];
    const auto arcs = static_cast<std::size_t>(2 * g.edge_count());
    head_.resize(arcs);
    partner_.resize(arcs);
    std::vector<int> fill(first_.begin(), first_.end() - 1);
    for (const auto& [u, v] : g.edges()) {
      const int a = fill[u]++, b = fill[v]++;
      head_[a] = v;
      head_[b] = u;
      partner_[a] = b;
      partner_[b] = a;
    }
    residual_.assign(arcs, 1);
    parent_arc_.assign(n_, -1);
    arc_to_.assign(n_, -1);
  }

  /// Max flow s -> t, stopping early once it reaches `cap`.
  int max_flow(Vertex s, Vertex t, int cap) {
    std::fill(residual_.begin(), residual_.end(), 1);
    int flow = 0;

    // Seed with the direct edge and the two-hop paths through common
    // neighbors: they are arc-disjoint, so they form a valid flow.
    std::fill(arc_to_.begin(), arc_to_.end(), -1);
    for (int a = first_[s]; a < first_[s + 1]; ++a) arc_to_[head_[a]] = a;
    for (int a = first_[t]; a < first_[t + 1] && flow < cap; ++a) {
      const Vertex w = head_[a];
      if (w == s) {
        push(partner_[a]);
        ++flow;
      } else if (arc_to_[w] >= 0) {
        push(arc_to_[w]);
        push(partner_[a]);
        ++flow;
      }
    }

    std::vector<Vertex> queue;
    queue.reserve(n_);
    while (flow < cap) {
      std::fill(parent_arc_.begin(), parent_arc_.end(), -1);
      queue.clear();
      queue.push_back(s);
      parent_arc_[s] = -2;
      bool reached = false;
      for (std::size_t i = 0; i < queue.size() && !reached; ++i) {
        const Vertex u = queue[i];
        for (int a = first_[u]; a < first_[u + 1]; ++a) {
          const Vertex w = head_[a];
          if (residual_[a] > 0 && parent_arc_[w] == -1) {
            parent_arc_[w] = a;
            if (w == t) {
              reached = true;
              break;
            }
            queue.push_back(w);
          }
        }
      }
      if (!reached) break;
      for (Vertex v = t; v != s;) {
        const int a = parent_arc_[v];
        push(a);
        v = head_[partner_[a]];
      }
      ++flow;
    }
    return flow;
  }

 private:
  void push(int arc) {
    --residual_[arc];
    ++residual_[partner_[arc]];
  }

  int n_;
  std::vector<int> first_, head_, partner_, residual_, parent_arc_, arc_to_;
};

int edge_connectivity_unchecked(const Graph& g) {
  if (g.n() < 2) return 0;
  int best = g.degree(0);
  for (Vertex v = 1; v < g.n(); ++v) best = std::min(best, g.degree(v));
  UnitFlowNetwork network(g);
  for (Vertex t = 1; t < g.n() && best > 0; ++t) best = std::min(best, network.max_flow(0, t, best));
  return best;
}

Eigen::VectorXd closeness_from(const DistanceMatrix& d) {
  const auto n = d.rows();
  Eigen::VectorXd scores(n);
  const auto sums = d.cast<long long>().rowwise().sum();
  for (Eigen::Index v = 0; v < n; ++v) scores(v) = static_cast<double>(n - 1) / static_cast<double>(sums(v));
  return scores;
}

Eigen::VectorXd betweenness_unchecked(const Graph& g) {
  const int n = g.n();
  Eigen::VectorXd centrality = Eigen::VectorXd::Zero(n);
  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<Vertex> order;
  order.reserve(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Vertex u = order[i];
      for (Vertex w : g.neighbors(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) sigma[w] += sigma[u];
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const Vertex w = *it;
      for (Vertex u : g.neighbors(w))
        if (dist[u] == dist[w] - 1) delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w]);
      if (w != s) centrality(w) += delta[w];
    }
  }
  return centrality / 2.0;  // every unordered pair was visited from both ends
}

Eigen::VectorXd eigenvector_unchecked(const Graph& g) {
  return numerics::dominant_eigenpair(adjacency_matrix<double>(g)).vector;
}

double resistance_unchecked(const Graph& g) {
  const Eigen::VectorXd mu = numerics::symmetric_eigenvalues(laplacian_matrix<double>(g));
  const auto n = mu.size();
  // Descending order: the last eigenvalue is the analytic zero.
  if (n < 2 || mu(n - 2) < 1e-9) throw DomainError("Laplacian has a repeated zero eigenvalue (disconnected graph)");
  return static_cast<double>(n) * mu.head(n - 1).cwiseInverse().sum();
}

double spectral_radius_unchecked(const Graph& g) {
  const Eigen::VectorXd lambda = numerics::symmetric_eigenvalues(adjacency_matrix<double>(g));
  return std::max(std::abs(lambda(0)), std::abs(lambda(lambda.size() - 1)));
}

double normalize_by_order(double value, int n) { return n < 2 ? 0.0 : value / (n - 1.0); }

}  // namespace

double NormalizationContext::denominator(Centrality kind) const {
  switch (kind) {
    case Centrality::Closeness: return star_closeness_denominator;
    case Centrality::Betweenness: return star_betweenness_denominator;
    case Centrality::Eigenvector: return star_eigenvector_denominator;
  }
  return 0.0;
}

const NormalizationContext& NormalizationContext::for_order(int n) {
  if (n < 3) throw DomainError("centralization needs at least 3 vertices");
  static std::mutex mutex;
  static std::map<int, NormalizationContext> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  const Graph star = star_graph(n);
  NormalizationContext ctx;
  ctx.n = n;
  ctx.star_closeness_denominator = freeman_sum(closeness_from(all_pairs_distances(star)));
  ctx.star_betweenness_denominator = freeman_sum(betweenness_unchecked(star));
  ctx.star_eigenvector_denominator = freeman_sum(eigenvector_unchecked(star));
  return cache.emplace(n, ctx).first->second;
}

double global_clustering(const Graph& g) {
  require_connected(g);
  return gcc_unchecked(g);
}

double average_square_clustering(const Graph& g) {
  require_connected(g);
  return ascc_unchecked(g);
}

double average_path_length(const Graph& g) {
  require_connected(g);
  if (g.n() < 2) throw DomainError("average path length needs at least 2 vertices");
  return apl_from(all_pairs_distances(g));
}

double apl_norm(const Graph& g) { return average_path_length(g) * 3.0 / (g.n() + 1.0); }

AssortativityResult assortativity(const Graph& g) {
  require_connected(g);
  if (g.edge_count() == 0) throw DomainError("assortativity needs at least one edge");
  return assortativity_unchecked(g);
}

double density(const Graph& g) {
  require_connected(g);
  return density_unchecked(g);
}

int diameter(const Graph& g) {
  require_connected(g);
  return all_pairs_distances(g).maxCoeff();
}

double diameter_norm(const Graph& g) { return normalize_by_order(diameter(g), g.n()); }

int edge_connectivity(const Graph& g) {
  require_connected(g);
  return edge_connectivity_unchecked(g);
}

double edge_connectivity_norm(const Graph& g) { return normalize_by_order(edge_connectivity(g), g.n()); }

Eigen::VectorXd closeness_scores(const Graph& g) {
  require_connected(g);
  return closeness_from(all_pairs_distances(g));
}

Eigen::VectorXd betweenness_scores(const Graph& g) {
  require_connected(g);
  return betweenness_unchecked(g);
}

Eigen::VectorXd eigenvector_scores(const Graph& g) {
  require_connected(g);
  return eigenvector_unchecked(g);
}

double freeman_sum(const Eigen::Ref<const Eigen::VectorXd>& scores) {
  return (scores.maxCoeff() - scores.array()).sum();
}

double centralization(const Graph& g, Centrality kind) {
  require_connected(g);
  const auto& ctx = NormalizationContext::for_order(g.n());
  Eigen::VectorXd scores;
  switch (kind) {
    case Centrality::Closeness: scores = closeness_from(all_pairs_distances(g)); break;
    case Centrality::Betweenness: scores = betweenness_unchecked(g); break;
    case Centrality::Eigenvector: scores = eigenvector_unchecked(g); break;
  }
  return freeman_sum(scores) / ctx.denominator(kind);
}

double effective_resistance(const Graph& g) {
  require_connected(g);
  return resistance_unchecked(g);
}

double effective_resistance_norm(const Graph& g) { return (g.n() - 1.0) / effective_resistance(g); }

double spectral_radius(const Graph& g) {
  require_connected(g);
  return spectral_radius_unchecked(g);
}

double spectral_radius_norm(const Graph& g) { return normalize_by_order(spectral_radius(g), g.n()); }

PropertyVector compute_property_vector(const Graph& g) {
  require_connected(g);
  const int n = g.n();
  const auto& ctx = NormalizationContext::for_order(n);
  const DistanceMatrix dist = all_pairs_distances(g);

  PropertyVector pv;
  pv.n = n;
  pv[Property::Gcc] = gcc_unchecked(g);
  pv[Property::Ascc] = ascc_unchecked(g);
  pv[Property::Apl] = apl_from(dist) * 3.0 / (n + 1.0);
  const auto r = assortativity_unchecked(g);
  pv[Property::Assortativity] = r.value;
  pv.assortativity_degenerate = r.degenerate;
  pv[Property::Density] = density_unchecked(g);
  pv[Property::Diameter] = normalize_by_order(dist.maxCoeff(), n);
  pv[Property::EdgeConnectivity] = normalize_by_order(edge_connectivity_unchecked(g), n);
  pv[Property::Closeness] = freeman_sum(closeness_from(dist)) / ctx.star_closeness_denominator;
  pv[Property::Betweenness] = freeman_sum(betweenness_unchecked(g)) / ctx.star_betweenness_denominator;
  pv[Property::Eigenvector] = freeman_sum(eigenvector_unchecked(g)) / ctx.star_eigenvector_denominator;
  pv[Property::Resistance] = (n - 1.0) / resistance_unchecked(g);
  pv[Property::SpectralRadius] = normalize_by_order(spectral_radius_unchecked(g), n);
  return pv;
}

}  // namespace gspace
