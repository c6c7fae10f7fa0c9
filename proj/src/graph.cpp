#include "gspace/graph.hpp"

#include "gspace/errors.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace gspace {

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  if (n < 0) throw InputError("vertex count must be non-negative, got " + std::to_string(n));
  Graph g;
  g.n_ = n;
  g.words_ = (static_cast<std::size_t>(n) + 63) / 64;
  g.adjacency_.assign(n, {});
  g.bits_.assign(static_cast<std::size_t>(n) * g.words_, 0);
  g.edges_.reserve(edges.size());

  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") out of range for n = " + std::to_string(n));
    }
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v)) {
      throw ValidationError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
    g.bits_[u * g.words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    g.bits_[v * g.words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
    g.edges_.emplace_back(u, v);
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

Graph complete_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph path_graph(int n) {
  std::vector<Edge> e;
  for (int u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph::from_edges(n, e);
}

Graph cycle_graph(int n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 vertices");
  std::vector<Edge> e;
  for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
  return Graph::from_edges(n, e);
}

Graph star_graph(int n) {
  std::vector<Edge> e;
  for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph::from_edges(n, e);
}

Graph empty_graph(int n) { return Graph::from_edges(n, {}); }

DegreeStats degree_stats(const Graph& g) {
  DegreeStats s;
  s.degrees.resize(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    s.degrees[v] = g.degree(v);
    s.max_degree = std::max(s.max_degree, s.degrees[v]);
  }
  s.degree_sequence = s.degrees;
  std::sort(s.degree_sequence.begin(), s.degree_sequence.end());
  return s;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, Vertex source) {
  std::vector<std::int32_t> dist(g.n(), kUnreachable);
  std::vector<Vertex> queue;
  queue.reserve(g.n());
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex u = queue[head];
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  DistanceMatrix d(g.n(), g.n());
  for (Vertex s = 0; s < g.n(); ++s) {
    const auto row = bfs_distances(g, s);
    for (Vertex t = 0; t < g.n(); ++t) d(s, t) = row[t];
  }
  return d;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  const auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](std::int32_t x) { return x == kUnreachable; });
}

namespace {

// Vertex colors from (degree, sorted neighbor degrees); colors are comparable
// across the two graphs because they index a shared signature table.
std::vector<int> refine_colors(const Graph& g, std::map<std::vector<int>, int>& table) {
  std::vector<int> colors(g.n());
  for (Vertex v = 0; v < g.n(); ++v) {
    std::vector<int> sig{g.degree(v)};
    for (Vertex w : g.neighbors(v)) sig.push_back(g.degree(w));
    std::sort(sig.begin() + 1, sig.end());
    auto [it, inserted] = table.try_emplace(std::move(sig), static_cast<int>(table.size()));
    colors[v] = it->second;
  }
  return colors;
}

struct Matcher {
  const Graph& a;
  const Graph& b;
  const std::vector<int>& color_a;
  const std::vector<int>& color_b;
  std::vector<Vertex> order;    // vertices of a in assignment order
  std::vector<Vertex> mapping;  // a-vertex -> b-vertex
  std::vector<bool> used;

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const Vertex u = order[depth];
    for (Vertex cand = 0; cand < b.n(); ++cand) {
      if (used[cand] || color_b[cand] != color_a[u]) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < depth && consistent; ++k) {
        const Vertex prev = order[k];
        consistent = a.has_edge(u, prev) == b.has_edge(cand, mapping[prev]);
      }
      if (!consistent) continue;
      mapping[u] = cand;
      used[cand] = true;
      if (extend(depth + 1)) return true;
      used[cand] = false;
    }
    return false;
  }
};

}  // namespace

bool are_isomorphic(const Graph& a, const Graph& b, int max_n) {
  if (a.n() > max_n || b.n() > max_n) {
    throw SizeLimitError("isomorphism test limited to n <= " + std::to_string(max_n));
  }
  if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
  if (degree_stats(a).degree_sequence != degree_stats(b).degree_sequence) return false;

  std::map<std::vector<int>, int> table;
  const auto ca = refine_colors(a, table);
  const auto cb = refine_colors(b, table);
  auto sa = ca, sb = cb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  // Assign rare colors first; break ties by BFS-ish adjacency to already placed vertices.
  std::vector<int> class_size(table.size(), 0);
  for (int c : ca) ++class_size[c];
  Matcher m{a, b, ca, cb, {}, std::vector<Vertex>(a.n(), -1), std::vector<bool>(b.n(), false)};
  std::vector<bool> placed(a.n(), false);
  for (int step = 0; step < a.n(); ++step) {
    Vertex best = -1;
    int best_links = -1;
    for (Vertex v = 0; v < a.n(); ++v) {
      if (placed[v]) continue;
      int links = 0;
      for (Vertex w : a.neighbors(v)) links += placed[w];
      if (best == -1 || links > best_links ||
          (links == best_links && class_size[ca[v]] < class_size[ca[best]])) {
        best = v;
        best_links = links;
      }
    }
    placed[best] = true;
    m.order.push_back(best);
  }
  return m.extend(0);
}

Graph read_edge_list(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty()) return true;
    }
    return false;
  };
  if (!next_line(line)) throw InputError("edge list: missing header line `n m`");
  long long n = 0, m = 0;
  {
    std::istringstream header(line);
    if (!(header >> n >> m) || n < 0 || m < 0) throw InputError("edge list: bad header `" + line + "`");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line(line)) throw InputError("edge list: expected " + std::to_string(m) + " edges");
    std::istringstream row(line);
    long long u = 0, v = 0;
    if (!(row >> u >> v)) throw InputError("edge list: bad edge line `" + line + "`");
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(static_cast<int>(n), edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace gspace
