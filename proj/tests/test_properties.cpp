#include "gspace/enumeration.hpp"
#include "gspace/errors.hpp"
#include "gspace/generators.hpp"
#include "gspace/properties.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace gspace;
using Catch::Approx;

namespace {

Graph build(int n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

Graph k4_minus_edge() { return build(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

void check_vector(const PropertyVector& pv, std::array<double, 12> expected) {
  for (int p = 0; p < kPropertyCount; ++p) {
    INFO("property " << kPropertyNames[p]);
    CHECK(pv.values(p) == Approx(expected[p]).margin(1e-9));
  }
}

}  // namespace

TEST_CASE("property names round trip") {
  for (int p = 0; p < kPropertyCount; ++p) CHECK(index_of(parse_property(kPropertyNames[p])) == p);
  CHECK_THROWS_AS(parse_property("nope"), InputError);
}

TEST_CASE("global clustering") {
  CHECK(global_clustering(complete_graph(3)) == 1.0);
  CHECK(global_clustering(path_graph(3)) == 0.0);
  CHECK(global_clustering(k4_minus_edge()) == Approx(0.75));
  CHECK(global_clustering(k4_minus_edge()) == Approx(oracle::gcc(k4_minus_edge())));
}

TEST_CASE("average square clustering") {
  CHECK(average_square_clustering(cycle_graph(4)) == Approx(1.0));
  CHECK(average_square_clustering(cycle_graph(5)) == 0.0);
  CHECK(average_square_clustering(star_graph(6)) == 0.0);
  CHECK(average_square_clustering(path_graph(7)) == 0.0);
  // Complete graphs: every neighbor pair closes q = n - 3 squares with no open potential.
  CHECK(average_square_clustering(complete_graph(5)) == Approx(1.0));
}

TEST_CASE("average path length") {
  CHECK(apl_norm(complete_graph(5)) == Approx(0.5));
  CHECK(average_path_length(path_graph(3)) == Approx(4.0 / 3.0));
  for (int n = 3; n <= 8; ++n) CHECK(apl_norm(path_graph(n)) == Approx(1.0));
}

TEST_CASE("assortativity") {
  for (int n = 4; n <= 8; ++n) {
    CHECK(assortativity(star_graph(n)).value == Approx(-1.0));
    CHECK(assortativity(star_graph(n)).value == Approx(oracle::assortativity(star_graph(n))));
  }
  const auto c = assortativity(cycle_graph(6));
  CHECK(c.value == 0.0);
  CHECK(c.degenerate);
  CHECK(assortativity(path_graph(4)).value == Approx(-0.5));
  CHECK_FALSE(assortativity(path_graph(4)).degenerate);
}

TEST_CASE("density, diameter and edge connectivity") {
  CHECK(density(complete_graph(4)) == 1.0);
  CHECK(density(path_graph(3)) == Approx(2.0 / 3.0));
  CHECK(density(cycle_graph(5)) == 0.5);

  CHECK(diameter_norm(path_graph(6)) == 1.0);
  CHECK(diameter_norm(complete_graph(6)) == Approx(0.2));
  CHECK(diameter_norm(cycle_graph(6)) == Approx(0.6));

  CHECK(edge_connectivity_norm(path_graph(6)) == Approx(0.2));
  CHECK(edge_connectivity_norm(star_graph(6)) == Approx(0.2));
  CHECK(edge_connectivity_norm(cycle_graph(7)) == Approx(2.0 / 6.0));
  CHECK(edge_connectivity(complete_graph(5)) == 4);
  CHECK(oracle::edge_connectivity(complete_graph(5)) == 4);
  CHECK(edge_connectivity_norm(complete_graph(5)) == 1.0);
}

TEST_CASE("adding an edge never lowers density nor raises diameter") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = gen_er(15, 0.3, rng);
    if (!is_connected(g)) continue;
    std::vector<Edge> edges = g.edges();
    for (int u = 0; u < 15 && edges.size() == g.edges().size(); ++u)
      for (int v = u + 1; v < 15; ++v)
        if (!g.has_edge(u, v)) {
          edges.emplace_back(u, v);
          break;
        }
    const Graph h = Graph::from_edges(15, edges);
    CHECK(density(h) >= density(g));
    CHECK(diameter(h) <= diameter(g));
  }
}

TEST_CASE("centralization") {
  for (int n = 3; n <= 9; ++n) {
    for (auto kind : {Centrality::Closeness, Centrality::Betweenness, Centrality::Eigenvector}) {
      CHECK(centralization(star_graph(n), kind) == Approx(1.0));
      CHECK(centralization(complete_graph(n), kind) == Approx(0.0).margin(1e-8));
      CHECK(centralization(cycle_graph(n), kind) == Approx(0.0).margin(1e-8));
    }
    const auto& ctx = NormalizationContext::for_order(n);
    CHECK(ctx.star_closeness_denominator == Approx(oracle::star_closeness_sum(n)));
    CHECK(ctx.star_betweenness_denominator == Approx(oracle::star_betweenness_sum(n)));
    CHECK(ctx.star_eigenvector_denominator == Approx(oracle::star_eigenvector_sum(n)));
  }
  CHECK(centralization(path_graph(4), Centrality::Closeness) == Approx(0.5 / 1.2));
  const Eigen::VectorXd p4 = closeness_scores(path_graph(4));
  CHECK(p4(0) == Approx(0.5));
  CHECK(p4(1) == Approx(0.75));
  CHECK_THROWS_AS(NormalizationContext::for_order(2), DomainError);
}

TEST_CASE("effective resistance") {
  for (int n = 3; n <= 8; ++n) CHECK(effective_resistance_norm(complete_graph(n)) == Approx(1.0));
  CHECK(effective_resistance(path_graph(3)) == Approx(4.0));
  CHECK(effective_resistance_norm(path_graph(3)) == Approx(0.5));
  // C4: adjacent pairs 3/4, opposite pairs 1, total 4 * 3/4 + 2 * 1 = 5.
  CHECK(effective_resistance(cycle_graph(4)) == Approx(5.0));
  CHECK(effective_resistance(cycle_graph(4)) == Approx(oracle::resistance_total(cycle_graph(4))).epsilon(1e-10));
  CHECK(effective_resistance_norm(cycle_graph(4)) == Approx(3.0 / 5.0));
}

TEST_CASE("spectral radius") {
  for (int n = 3; n <= 8; ++n) {
    CHECK(spectral_radius_norm(complete_graph(n)) == Approx(1.0));
    CHECK(spectral_radius_norm(cycle_graph(n)) == Approx(2.0 / (n - 1)));
  }
  CHECK(spectral_radius_norm(star_graph(4)) == Approx(std::sqrt(3.0) / 3.0));
}

TEST_CASE("property vectors of named graphs") {
  auto k5 = compute_property_vector(complete_graph(5));
  check_vector(k5, {1, 1, 0.5, 0, 1, 0.25, 1, 0, 0, 0, 1, 1});
  CHECK(k5.assortativity_degenerate);

  const auto s5 = compute_property_vector(star_graph(5));
  CHECK(s5[Property::Assortativity] == Approx(-1.0));
  CHECK(s5[Property::Closeness] == Approx(1.0));
  CHECK(s5[Property::Betweenness] == Approx(1.0));
  CHECK(s5[Property::Eigenvector] == Approx(1.0));
  CHECK(s5[Property::Density] == Approx(0.4));

  const auto c5 = compute_property_vector(cycle_graph(5));
  CHECK(c5[Property::Gcc] == 0.0);
  CHECK(c5[Property::Ascc] == 0.0);
  CHECK(c5[Property::Density] == 0.5);
  CHECK(c5[Property::EdgeConnectivity] == 0.5);
  CHECK(c5[Property::Closeness] == Approx(0.0).margin(1e-9));
  CHECK(c5[Property::Betweenness] == Approx(0.0).margin(1e-9));
  CHECK(c5[Property::Eigenvector] == Approx(0.0).margin(1e-9));
}

TEST_CASE("disconnected graphs are rejected") {
  const Graph split = build(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(compute_property_vector(split), DomainError);
  CHECK_THROWS_AS(global_clustering(split), DomainError);
  CHECK_THROWS_AS(effective_resistance(split), DomainError);
  CHECK_THROWS_AS(centralization(split, Centrality::Eigenvector), DomainError);
}

TEST_CASE("every connected labeled graph with n <= 5 matches the oracles") {
  for (int n = 4; n <= 5; ++n) {
    enumerate_labeled(n, true, [&](GraphCode code, const Graph& g) {
      const auto pv = compute_property_vector(g);
      const auto expected = oracle::property_vector(g);
      for (int p = 0; p < kPropertyCount; ++p) {
        if (std::abs(pv.values(p) - expected[p]) > 1e-8) {
          FAIL("n=" << n << " mask=" << code.mask << " property " << kPropertyNames[p] << ": " << pv.values(p)
                    << " vs " << expected[p]);
        }
      }
    });
  }
}

TEST_CASE("random graphs match the oracles and stay in range") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_below(10));
    const Graph g = gen_er(n, rng.uniform(0.2, 0.9), rng);
    if (!is_connected(g)) continue;
    const auto pv = compute_property_vector(g);
    const auto expected = oracle::property_vector(g);
    for (int p = 0; p < kPropertyCount; ++p) {
      INFO("n=" << n << " property " << kPropertyNames[p]);
      CHECK(pv.values(p) == Approx(expected[p]).margin(1e-8));
      if (p == index_of(Property::Assortativity)) {
        CHECK(pv.values(p) >= -1.0 - 1e-12);
      } else {
        CHECK(pv.values(p) >= -1e-12);
      }
      CHECK(pv.values(p) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("property vectors stay in range across orders 5..100") {
  Rng rng(23);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform_below(96));
    const double p = rng.uniform(0.1, 0.9);
    const Graph g = gen_er(n, p, rng);
    if (!is_connected(g)) continue;
    const auto pv = compute_property_vector(g);
    for (int k = 0; k < kPropertyCount; ++k) {
      const double lo = k == index_of(Property::Assortativity) ? -1.0 : 0.0;
      CHECK(pv.values(k) >= lo - 1e-12);
      CHECK(pv.values(k) <= 1.0 + 1e-12);
    }
  }
}
