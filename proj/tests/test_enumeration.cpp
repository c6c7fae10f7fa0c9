#include "gspace/enumeration.hpp"
#include "gspace/errors.hpp"
#include "gspace/numerics.hpp"

#include <catch_amalgamated.hpp>

#include <bit>
#include <vector>

using namespace gspace;
using Catch::Approx;

TEST_CASE("enumerate_labeled counts") {
  int all = 0, connected = 0;
  enumerate_labeled(4, false, [&](GraphCode, const Graph&) { ++all; });
  enumerate_labeled(4, true, [&](GraphCode, const Graph&) { ++connected; });
  CHECK(all == 64);
  CHECK(connected == 38);
  CHECK(count_connected(4) == 38);
  CHECK(count_connected(5) == 728);
  CHECK(count_connected(6) == 26704);
  CHECK_THROWS_AS(enumerate_labeled(3, false, [](GraphCode, const Graph&) {}), ValidationError);
  CHECK_THROWS_AS(count_connected(8), ValidationError);
}

TEST_CASE("masks decode in lexicographic pair order and increase") {
  std::uint32_t last = 0;
  bool first = true;
  enumerate_labeled(4, false, [&](GraphCode code, const Graph& g) {
    if (!first) CHECK(code.mask == last + 1);
    first = false;
    last = code.mask;
    CHECK(static_cast<int>(g.edge_count()) == std::popcount(code.mask));
    CHECK(mask_connected(4, code.mask) == is_connected(g));
  });
  CHECK(decode(GraphCode{4, 0b000001}).has_edge(0, 1));
  CHECK(decode(GraphCode{4, 0b100000}).has_edge(2, 3));
  CHECK(pair_order(4).size() == 6);
}

TEST_CASE("exact stats at n = 4") {
  const auto stats = exact_property_stats(4);
  CHECK(stats.total_graphs == 64);
  CHECK(stats.connected_graphs == 38);
  double density_sum = 0;
  enumerate_labeled(4, true, [&](GraphCode, const Graph& g) { density_sum += density(g); });
  const auto& den = stats.properties[index_of(Property::Density)];
  CHECK(den.moments.mean == Approx(density_sum / 38));
  CHECK(stats.properties[index_of(Property::Gcc)].moments.max == 1.0);
  CHECK(den.quantile(0.0) == den.moments.min);
  CHECK(den.quantile(1.0) == den.moments.max);
}

TEST_CASE("threaded enumeration gives the same statistics") {
  const auto one = exact_property_stats(5, 1);
  const auto four = exact_property_stats(5, 4);
  CHECK(one.connected_graphs == four.connected_graphs);
  for (int p = 0; p < kPropertyCount; ++p) {
    CHECK(one.properties[p].moments.mean == four.properties[p].moments.mean);
    CHECK(one.properties[p].histogram == four.properties[p].histogram);
  }
}

TEST_CASE("exact correlation matrix") {
  const auto corr = exact_correlation_matrix(4);
  for (int i = 0; i < kPropertyCount; ++i) {
    CHECK(corr.values(i, i) == 1.0);
    for (int j = 0; j < kPropertyCount; ++j) CHECK(corr.values(i, j) == corr.values(j, i));
  }
  // Two-pass Pearson over the same 38 graphs.
  std::vector<double> den, ce;
  enumerate_labeled(4, true, [&](GraphCode, const Graph& g) {
    den.push_back(density(g));
    ce.push_back(edge_connectivity_norm(g));
  });
  const int d = index_of(Property::Density), e = index_of(Property::EdgeConnectivity);
  CHECK(corr.values(d, e) == Approx(*numerics::pearson(den, ce)).epsilon(1e-12));
}
