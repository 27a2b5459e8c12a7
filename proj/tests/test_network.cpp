#include <gtest/gtest.h>

#include <random>

#include "agc/network.hpp"
#include "agc/rng.hpp"

using agc::Edge;
using agc::Topology;
using agc::TopologySchedule;

namespace {

void expect_symmetric(const Topology& t) {
  for (std::size_t i = 0; i < t.size(); ++i) {
    EXPECT_EQ(t.weight(i, i), 0.0);
    for (std::size_t j = 0; j < t.size(); ++j) ASSERT_EQ(t.weight(i, j), t.weight(j, i));
  }
}

double row_sum(const Topology& t, std::size_t i) {
  double s = 0.0;
  for (std::size_t j = 0; j < t.size(); ++j) s += t.weight(i, j);
  return s;
}

Topology edges(std::size_t n, std::vector<Edge> es) { return Topology::from_edges(n, es); }

}  // namespace

TEST(Network, CycleRowsSumToTwo) {
  const auto t = agc::build_cycle(10);
  expect_symmetric(t);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(row_sum(t, i), 2.0);
  EXPECT_EQ(t.edge_count(), 10u);
  EXPECT_EQ(agc::w_max(t), 2.0);
}

TEST(Network, ThreeCycleIsTriangle) {
  EXPECT_EQ(agc::build_cycle(3), agc::build_complete(3));
  EXPECT_THROW(agc::build_cycle(2), std::invalid_argument);
}

TEST(Network, WeightedCycleWmax) { EXPECT_EQ(agc::w_max(agc::build_cycle(4, 0.5)), 1.0); }

TEST(Network, WmaxExamples) {
  EXPECT_EQ(agc::w_max(agc::build_complete(5)), 4.0);
  EXPECT_EQ(agc::w_max(agc::build_star(5)), 4.0);
  EXPECT_THROW(agc::w_max(Topology(4)), std::invalid_argument);
}

TEST(Network, ErdosRenyiExtremes) {
  const auto empty = agc::build_erdos_renyi(6, 0.0, 1);
  EXPECT_EQ(empty.edge_count(), 0u);
  EXPECT_FALSE(agc::is_connected(empty));
  const auto full = agc::build_erdos_renyi(6, 1.0, 1);
  EXPECT_EQ(full, agc::build_complete(6));
  EXPECT_EQ(agc::w_max(full), 5.0);
}

TEST(Network, ErdosRenyiIsDeterministicAndFollowsCounterRule) {
  const auto a = agc::build_erdos_renyi(10, 0.4, 57);
  EXPECT_EQ(a, agc::build_erdos_renyi(10, 0.4, 57));
  expect_symmetric(a);
  const agc::CounterRng rng(57);
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = i + 1; j < 10; ++j, ++c)
      EXPECT_EQ(a.weight(i, j) > 0.0, rng.uniform01(c) < 0.4) << i << ',' << j;
}

TEST(Network, ErdosRenyiDensityIsNearP) {
  const auto t = agc::build_erdos_renyi(200, 0.2, 55);
  const double pairs = 200.0 * 199.0 / 2.0;
  EXPECT_NEAR(t.edge_count() / pairs, 0.2, 0.01);
}

TEST(Network, FromWeightsValidates) {
  EXPECT_THROW(Topology::from_weights(2, {0, 1, 2, 0}), std::invalid_argument);
  EXPECT_THROW(Topology::from_weights(2, {1, 1, 1, 0}), std::invalid_argument);
  EXPECT_THROW(Topology::from_weights(2, {0, -1, -1, 0}), std::invalid_argument);
  EXPECT_THROW(Topology::from_weights(2, {0, 1, 1}), std::invalid_argument);
  EXPECT_NO_THROW(Topology::from_weights(2, {0, 1.5, 1.5, 0}));
}

TEST(Network, FromEdgesValidates) {
  EXPECT_THROW(edges(3, {{1, 1, 1.0}}), std::invalid_argument);
  EXPECT_THROW(edges(3, {{0, 3, 1.0}}), std::invalid_argument);
  const auto t = edges(3, {{2, 0, 1.0}, {0, 2, 3.0}});
  EXPECT_EQ(t.weight(0, 2), 3.0);
  EXPECT_EQ(t.edges(), (std::vector<Edge>{{0, 2, 3.0}}));
}

TEST(Network, LaplacianExamples) {
  const auto l = agc::laplacian(agc::build_cycle(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(l(i, j), i == j ? 2.0 : -1.0);
  const auto z = agc::laplacian(Topology(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(z(i, j), 0.0);
}

TEST(Network, LaplacianRowsSumToZero) {
  // Dyadic weights make the row sums exact in floating point.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> w(0, 8);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 9;
    std::vector<Edge> es;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (const int k = w(rng); k > 0) es.push_back({i, j, k * 0.125});
    const auto l = agc::laplacian(Topology::from_edges(n, es));
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += l(i, j);
      ASSERT_EQ(s, 0.0);
    }
  }
}

TEST(Network, ConnectivityExamples) {
  EXPECT_TRUE(agc::is_connected(agc::build_cycle(10)));
  EXPECT_FALSE(agc::is_connected(Topology(2)));
  std::vector<Edge> two_rings;
  for (std::size_t base : {0u, 5u})
    for (std::size_t k = 0; k < 5; ++k) two_rings.push_back({base + k, base + (k + 1) % 5, 1.0});
  EXPECT_FALSE(agc::is_connected(edges(10, two_rings)));
  EXPECT_TRUE(agc::is_connected(Topology(1)));
}

TEST(Network, UnionExamples) {
  const auto g = agc::build_erdos_renyi(8, 0.5, 3);
  const Topology self[] = {g, g};
  EXPECT_EQ(agc::union_topology(self), g);

  const Topology path_parts[] = {edges(3, {{0, 1, 1.0}}), edges(3, {{1, 2, 1.0}})};
  const auto path = agc::union_topology(path_parts);
  EXPECT_EQ(path.edge_count(), 2u);
  EXPECT_TRUE(agc::is_connected(path));
  for (const auto& part : path_parts) EXPECT_FALSE(agc::is_connected(part));

  const Topology tree_parts[] = {edges(5, {{0, 1, 1.0}, {2, 3, 1.0}}),
                                 edges(5, {{1, 2, 1.0}, {3, 4, 1.0}})};
  EXPECT_TRUE(agc::is_connected(agc::union_topology(tree_parts)));
}

TEST(Network, ThinLinksIsSymmetricSubgraph) {
  const auto base = agc::build_erdos_renyi(30, 0.4, 9);
  for (double keep : {0.0, 0.25, 0.5, 1.0}) {
    const auto t = agc::thin_links(base, keep, 77);
    expect_symmetric(t);
    const agc::CounterRng rng(77);
    const auto be = base.edges();
    std::size_t expected = 0;
    for (std::size_t e = 0; e < be.size(); ++e) {
      const bool kept = rng.uniform01(e) < keep;
      expected += kept;
      EXPECT_EQ(t.weight(be[e].i, be[e].j), kept ? be[e].weight : 0.0);
    }
    EXPECT_EQ(t.edge_count(), expected);
  }
}

TEST(Network, ScheduleCyclesThroughSegments) {
  const TopologySchedule s({{2, agc::build_cycle(4)}, {3, agc::build_complete(4)}}, 5);
  EXPECT_EQ(s.period(), 5u);
  const std::size_t expect[] = {0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0};
  for (std::int64_t k = 0; k < 11; ++k) EXPECT_EQ(s.segment_index_at(k), expect[k]) << k;
  EXPECT_EQ(s.w_max(), 3.0);
}

TEST(Network, CertificationExamples) {
  const auto g = agc::build_erdos_renyi(10, 0.5, 2);
  ASSERT_TRUE(agc::is_connected(g));
  for (std::size_t b : {1u, 3u, 12u})
    EXPECT_TRUE(agc::certify_uniform_connectivity(TopologySchedule({{1, g}}, b)));

  const auto broken = edges(4, {{0, 1, 1.0}});
  EXPECT_FALSE(agc::certify_uniform_connectivity(TopologySchedule({{3, broken}, {3, broken}}, 6)));

  // Alternating halves of a path are only jointly connected.
  const auto a = edges(3, {{0, 1, 1.0}});
  const auto b = edges(3, {{1, 2, 1.0}});
  EXPECT_FALSE(agc::certify_uniform_connectivity(TopologySchedule({{2, a}, {2, b}}, 2)));
  EXPECT_TRUE(agc::certify_uniform_connectivity(TopologySchedule({{2, a}, {2, b}}, 3)));
}

TEST(Network, WindowOneCertifiesIffEverySegmentConnected) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> p(0.1, 0.7);
  for (int t = 0; t < 40; ++t) {
    std::vector<agc::Segment> segs;
    bool all_connected = true;
    for (int s = 0; s < 3; ++s) {
      auto g = agc::build_erdos_renyi(7, p(rng), rng());
      all_connected = all_connected && agc::is_connected(g);
      segs.push_back({1 + static_cast<std::size_t>(s), std::move(g)});
    }
    EXPECT_EQ(agc::certify_uniform_connectivity(TopologySchedule(segs, 1)), all_connected);
  }
}

TEST(Network, LinkGraphListsNeighboursAscending) {
  const auto t = agc::build_erdos_renyi(12, 0.5, 21);
  const agc::LinkGraph g(t);
  EXPECT_EQ(g.links().size(), t.edge_count());
  for (std::size_t i = 0; i < 12; ++i) {
    std::size_t prev = 0;
    bool first = true;
    std::size_t degree = 0;
    for (const auto& inc : g.incident(i)) {
      if (!first) EXPECT_GT(inc.neighbor, prev);
      first = false;
      prev = inc.neighbor;
      ++degree;
      const auto& e = g.links()[inc.link];
      EXPECT_TRUE((e.i == i && e.j == inc.neighbor) || (e.j == i && e.i == inc.neighbor));
    }
    std::size_t expect = 0;
    for (std::size_t j = 0; j < 12; ++j) expect += t.weight(i, j) > 0.0;
    EXPECT_EQ(degree, expect);
  }
}
