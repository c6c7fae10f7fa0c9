#include "gspace/generators.hpp"

#include "gspace/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <type_traits>

namespace gspace {

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::ER: return "er";
    case GeneratorKind::SBM: return "sbm";
    case GeneratorKind::NWS: return "nws";
    case GeneratorKind::GEOMETRIC: return "geometric";
    case GeneratorKind::BA: return "ba";
  }
  return "unknown";
}

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "er") return GeneratorKind::ER;
  if (name == "sbm") return GeneratorKind::SBM;
  if (name == "nws" || name == "ws") return GeneratorKind::NWS;
  if (name == "geometric" || name == "ge") return GeneratorKind::GEOMETRIC;
  if (name == "ba") return GeneratorKind::BA;
  throw InputError("unknown generator `" + name + "` (expected er, sbm, nws, geometric, ba)");
}

namespace {

void require_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

void validate_sbm(int n, const std::vector<int>& block_of, const Eigen::MatrixXd& probabilities) {
  if (static_cast<int>(block_of.size()) != n)
    throw ValidationError("SBM block assignment has " + std::to_string(block_of.size()) +
                          " entries for n = " + std::to_string(n));
  if (probabilities.rows() != probabilities.cols() || probabilities.rows() == 0)
    throw ValidationError("SBM probability matrix must be square and non-empty");
  const auto blocks = static_cast<int>(probabilities.rows());
  for (int b : block_of)
    if (b < 0 || b >= blocks) throw ValidationError("SBM block index out of range");
  for (int i = 0; i < blocks; ++i) {
    for (int j = 0; j < blocks; ++j) {
      require_probability(probabilities(i, j), "SBM probability");
      if (probabilities(i, j) != probabilities(j, i)) throw ValidationError("SBM probability matrix is not symmetric");
    }
  }
}

void validate_nws(int n, int k, double shortcut_p) {
  if (k < 2 || k % 2 != 0 || k >= n)
    throw ValidationError("NWS ring degree k must be even with 2 <= k < n");
  require_probability(shortcut_p, "NWS shortcut probability");
}

void validate_ba(int n, int m) {
  if (m < 1 || m >= n) throw ValidationError("BA attachment count must satisfy 1 <= m < n");
}

double pairs(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

void GeneratorSpec::validate() const {
  if (n < 1) throw ValidationError("generator vertex count must be positive");
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ErParams>) {
          require_probability(p.p, "ER p");
        } else if constexpr (std::is_same_v<T, SbmParams>) {
          validate_sbm(n, p.block_of, p.probabilities);
        } else if constexpr (std::is_same_v<T, NwsParams>) {
          validate_nws(n, p.k, p.shortcut_p);
        } else if constexpr (std::is_same_v<T, GeometricParams>) {
          if (!(p.radius > 0.0)) throw ValidationError("geometric radius must be positive");
        } else {
          validate_ba(n, p.m);
        }
      },
      params);
}

Graph gen_er(int n, double p, Rng& rng) {
  require_probability(p, "ER p");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph gen_sbm(int n, const std::vector<int>& block_of, const Eigen::MatrixXd& probabilities, Rng& rng) {
  validate_sbm(n, block_of, probabilities);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(probabilities(block_of[u], block_of[v]))) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

Graph gen_nws(int n, int k, double shortcut_p, Rng& rng) {
  validate_nws(n, k, shortcut_p);
  std::vector<std::uint8_t> adjacent(static_cast<std::size_t>(n) * n, 0);
  std::vector<Edge> edges;
  auto add = [&](Vertex u, Vertex v) {
    adjacent[static_cast<std::size_t>(u) * n + v] = adjacent[static_cast<std::size_t>(v) * n + u] = 1;
    edges.emplace_back(u, v);
  };
  for (Vertex u = 0; u < n; ++u)
    for (int j = 1; j <= k / 2; ++j) add(u, (u + j) % n);

  const std::size_t lattice_edges = edges.size();
  const auto max_edges = static_cast<std::size_t>(n) * (n - 1) / 2;
  for (std::size_t e = 0; e < lattice_edges; ++e) {
    if (!rng.bernoulli(shortcut_p) || edges.size() == max_edges) continue;
    for (;;) {
      const auto u = static_cast<Vertex>(rng.uniform_below(n));
      const auto v = static_cast<Vertex>(rng.uniform_below(n));
      if (u != v && !adjacent[static_cast<std::size_t>(u) * n + v]) {
        add(u, v);
        break;
      }
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_geometric(int n, double radius, Rng& rng) {
  if (!(radius > 0.0)) throw ValidationError("geometric radius must be positive");
  std::vector<double> x(n), y(n);
  for (int i = 0; i < n; ++i) {
    x[i] = rng.uniform01();
    y[i] = rng.uniform01();
  }
  const double r2 = radius * radius;
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const double dx = x[u] - x[v], dy = y[u] - y[v];
      if (dx * dx + dy * dy <= r2) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph gen_ba(int n, int m, Rng& rng) {
  validate_ba(n, m);
  std::vector<Edge> edges;
  std::vector<Vertex> endpoints;  // each vertex appears deg(v) times
  std::vector<bool> chosen(n, false);
  std::vector<Vertex> targets;
  for (Vertex v = m; v < n; ++v) {
    targets.clear();
    if (endpoints.empty()) {
      // All existing degrees are zero; a uniform choice of m out of the m seed vertices takes them all.
      for (Vertex t = 0; t < m; ++t) targets.push_back(t);
    } else {
      while (static_cast<int>(targets.size()) < m) {
        const Vertex t = endpoints[rng.uniform_below(endpoints.size())];
        if (!chosen[t]) {
          chosen[t] = true;
          targets.push_back(t);
        }
      }
    }
    for (Vertex t : targets) {
      chosen[t] = false;
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate(const GeneratorSpec& spec, Rng& rng) {
  spec.validate();
  return std::visit(
      [&](const auto& p) -> Graph {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ErParams>) return gen_er(spec.n, p.p, rng);
        else if constexpr (std::is_same_v<T, SbmParams>) return gen_sbm(spec.n, p.block_of, p.probabilities, rng);
        else if constexpr (std::is_same_v<T, NwsParams>) return gen_nws(spec.n, p.k, p.shortcut_p, rng);
        else if constexpr (std::is_same_v<T, GeometricParams>) return gen_geometric(spec.n, p.radius, rng);
        else return gen_ba(spec.n, p.m, rng);
      },
      spec.params);
}

Graph generate(const GeneratorSpec& spec) {
  Rng rng(spec.seed);
  return generate(spec, rng);
}

std::vector<int> equal_blocks(int n, int blocks) {
  if (blocks < 1 || blocks > n) throw ValidationError("block count must satisfy 1 <= l <= n");
  std::vector<int> block_of;
  block_of.reserve(n);
  for (int b = 0; b < blocks; ++b) {
    const int size = n / blocks + (b < n % blocks ? 1 : 0);
    block_of.insert(block_of.end(), size, b);
  }
  return block_of;
}

double unit_square_distance_cdf(double r) {
  constexpr double pi = std::numbers::pi;
  if (r <= 0.0) return 0.0;
  if (r <= 1.0) return pi * r * r - 8.0 * r * r * r / 3.0 + r * r * r * r / 2.0;
  if (r >= std::numbers::sqrt2) return 1.0;
  const double r2 = r * r;
  return 1.0 / 3.0 + 4.0 / 3.0 * std::sqrt(r2 - 1.0) * (2.0 * r2 + 1.0) + (pi - 2.0) * r2 - r2 * r2 / 2.0 -
         4.0 * r2 * std::acos(1.0 / r);
}

namespace {

std::vector<double> block_sizes(const SbmParams& p) {
  std::vector<double> sizes(p.probabilities.rows(), 0.0);
  for (int b : p.block_of) sizes[b] += 1.0;
  return sizes;
}

// Sum of C(s_i, 2) P_ii and sum over i < j of s_i s_j.
std::pair<double, double> sbm_pair_mass(const SbmParams& p) {
  const auto sizes = block_sizes(p);
  double within = 0.0, across = 0.0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    within += pairs(sizes[i]) * p.probabilities(i, i);
    for (std::size_t j = i + 1; j < sizes.size(); ++j) across += sizes[i] * sizes[j];
  }
  return {within, across};
}

double ba_density(int n, int m) { return static_cast<double>(m) * (n - m) / pairs(n); }

}  // namespace

double expected_density(const GeneratorSpec& spec) {
  spec.validate();
  const int n = spec.n;
  if (n < 2) return 0.0;
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ErParams>) {
          return p.p;
        } else if constexpr (std::is_same_v<T, SbmParams>) {
          const auto sizes = block_sizes(p);
          double expected = 0.0;
          for (std::size_t i = 0; i < sizes.size(); ++i) {
            expected += pairs(sizes[i]) * p.probabilities(i, i);
            for (std::size_t j = i + 1; j < sizes.size(); ++j) expected += sizes[i] * sizes[j] * p.probabilities(i, j);
          }
          return expected / pairs(n);
        } else if constexpr (std::is_same_v<T, NwsParams>) {
          // Each of the nk/2 lattice edges adds a fresh shortcut with probability p_s.
          return std::min(1.0, p.k * (1.0 + p.shortcut_p) / (n - 1.0));
        } else if constexpr (std::is_same_v<T, GeometricParams>) {
          return unit_square_distance_cdf(p.radius);
        } else {
          return ba_density(n, p.m);
        }
      },
      spec.params);
}

GeneratorSpec tune_density(GeneratorSpec spec, double target) {
  require_probability(target, "target density");
  const int n = spec.n;
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ErParams>) {
          p.p = target;
        } else if constexpr (std::is_same_v<T, SbmParams>) {
          if (p.probabilities.rows() == 1) {
            p.probabilities(0, 0) = target;
            return;
          }
          const auto [within, across] = sbm_pair_mass(p);
          const double off = std::clamp((target * pairs(n) - within) / across, 0.0, 1.0);
          for (Eigen::Index i = 0; i < p.probabilities.rows(); ++i)
            for (Eigen::Index j = 0; j < p.probabilities.cols(); ++j)
              if (i != j) p.probabilities(i, j) = off;
        } else if constexpr (std::is_same_v<T, NwsParams>) {
          p.shortcut_p = std::clamp(target * (n - 1.0) / p.k - 1.0, 0.0, 1.0);
        } else if constexpr (std::is_same_v<T, GeometricParams>) {
          double lo = 0.0, hi = std::numbers::sqrt2;
          for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            (unit_square_distance_cdf(mid) < target ? lo : hi) = mid;
          }
          p.radius = std::max(hi, 1e-12);
        } else {
          int best = 1;
          for (int m = 2; m < n; ++m)
            if (std::abs(ba_density(n, m) - target) < std::abs(ba_density(n, best) - target)) best = m;
          p.m = best;
        }
      },
      spec.params);
  return spec;
}

BandSample sample_in_density_band(const GeneratorSpec& tmpl, DensityBand band, std::size_t max_tries,
                                  std::uint64_t seed) {
  if (!(band.low >= 0.0 && band.low < band.high && band.high <= 1.0))
    throw ValidationError("density band must satisfy 0 <= low < high <= 1");
  const GeneratorSpec tuned = tune_density(tmpl, band.center());
  tuned.validate();
  Rng rng(seed);
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    Graph g = generate(tuned, rng);
    const double density = g.n() < 2 ? 0.0 : static_cast<double>(g.edge_count()) / pairs(g.n());
    if (band.contains(density) && is_connected(g)) return {std::move(g), attempt};
  }
  throw SamplingError(to_string(tmpl.kind()) + " generator produced no connected graph with density in (" +
                          std::to_string(band.low) + ", " + std::to_string(band.high) + ") after " +
                          std::to_string(max_tries) + " attempts",
                      max_tries);
}

Eigen::MatrixXd random_sbm_matrix(const std::vector<int>& block_of, int blocks, double target, Rng& rng) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(blocks, blocks);
  for (int i = 0; i < blocks; ++i) p(i, i) = rng.uniform(0.65, 0.85);
  GeneratorSpec spec{static_cast<int>(block_of.size()), SbmParams{block_of, p}, 0};
  return std::get<SbmParams>(tune_density(spec, target).params).probabilities;
}

std::vector<ClassSpec> classification_suite(int n, std::size_t per_class, std::uint64_t seed) {
  // The lattice supplies roughly three quarters of the target edges; shortcuts add the rest.
  const DensityBand band;
  int k = 2 * static_cast<int>(std::floor(0.75 * band.center() * (n - 1) / 2.0));
  k = std::clamp(k, 2, std::max(2, (n - 1) & ~1));

  std::vector<ClassSpec> suite;
  auto add = [&](std::string label, GeneratorParams params, int matrices) {
    const auto index = static_cast<std::uint64_t>(suite.size());
    suite.push_back({std::move(label), GeneratorSpec{n, std::move(params), child_seed(seed, index)}, per_class,
                     matrices});
  };
  add("ER", ErParams{0.5}, 0);
  for (int l = 2; l <= 5; ++l) {
    add("SBM" + std::to_string(l), SbmParams{equal_blocks(n, l), Eigen::MatrixXd::Constant(l, l, 0.5)}, 20);
  }
  add("GE", GeometricParams{0.5}, 0);
  add("WS", NwsParams{k, 0.0}, 0);
  add("BA", BaParams{1}, 0);
  return suite;
}

}  // namespace gspace
