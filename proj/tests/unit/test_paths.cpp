#include <gtest/gtest.h>

#include "../oracles.hpp"
#include "xdvne/paths.hpp"
#include "xdvne/rng.hpp"

namespace {

using namespace xdvne;

std::int64_t walk_weight(const std::vector<int>& path, const std::vector<WeightedEdge>& edges) {
  std::int64_t total = 0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    std::int64_t best = kUnreachable;
    for (const auto& e : edges) {
      const bool joins = (e.u == path[i - 1] && e.v == path[i]) || (e.v == path[i - 1] && e.u == path[i]);
      if (joins) best = std::min(best, e.weight);
    }
    if (best == kUnreachable) return -1;
    total += best;
  }
  return total;
}

TEST(Floyd, TriangleRoutesThroughMiddle) {
  const std::vector<WeightedEdge> edges{{0, 1, 1}, {1, 2, 2}, {0, 2, 5}};
  const auto t = all_pairs_shortest_paths(3, edges);
  EXPECT_EQ(t.distance(0, 2), 3);
  EXPECT_EQ(t.path(0, 2), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(t.path(2, 0), (std::vector<int>{2, 1, 0}));
}

TEST(Floyd, SingleNode) {
  const auto t = all_pairs_shortest_paths(1, {});
  EXPECT_EQ(t.distance(0, 0), 0);
  EXPECT_EQ(t.path(0, 0), std::vector<int>{0});
}

TEST(Floyd, UnreachablePairs) {
  const std::vector<WeightedEdge> edges{{0, 1, 4}};
  const auto t = all_pairs_shortest_paths(3, edges);
  EXPECT_FALSE(t.reachable(0, 2));
  EXPECT_EQ(t.distance(2, 1), kUnreachable);
  EXPECT_TRUE(t.path(0, 2).empty());
}

TEST(Floyd, ParallelEdgesKeepLighter) {
  const std::vector<WeightedEdge> edges{{0, 1, 7}, {1, 0, 2}};
  EXPECT_EQ(all_pairs_shortest_paths(2, edges).distance(0, 1), 2);
}

TEST(Floyd, NegativeWeightRejected) {
  const std::vector<WeightedEdge> edges{{0, 1, -1}};
  EXPECT_THROW(all_pairs_shortest_paths(2, edges), std::invalid_argument);
}

// 200 random graphs: distances match Dijkstra, the table obeys the triangle
// inequality and each reconstructed path weighs its stored distance.
TEST(Floyd, RandomGraphsAgreeWithDijkstra) {
  Rng rng(77);
  for (int g = 0; g < 200; ++g) {
    const int n = rng.uniform_int(1, 30);
    std::vector<WeightedEdge> edges;
    for (int i = 1; i < n; ++i) edges.push_back({i, rng.uniform_int(0, i - 1), rng.uniform_int(1, 10)});
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.bernoulli(0.2)) edges.push_back({i, j, rng.uniform_int(1, 10)});
      }
    }
    const auto t = all_pairs_shortest_paths(n, edges);
    for (int s = 0; s < n; ++s) {
      const auto dist = oracle::dijkstra(n, edges, s);
      ASSERT_EQ(t.distance(s, s), 0);
      for (int d = 0; d < n; ++d) {
        ASSERT_EQ(t.distance(s, d), dist[d]) << "graph " << g;
        ASSERT_EQ(walk_weight(t.path(s, d), edges), dist[d]);
        for (int m = 0; m < n; ++m) ASSERT_LE(t.distance(s, d), t.distance(s, m) + t.distance(m, d));
      }
    }
  }
}

SubstrateNetwork two_domain_line() {
  // Domain 0: 0-1-2 plus a slow chord 0-2; domain 1: 3-4. Bridge 2-3.
  SubstrateNetwork net(2);
  for (int i = 0; i < 3; ++i) net.add_node(0, 50, 1, 1);
  for (int i = 0; i < 2; ++i) net.add_node(1, 50, 1, 1);
  net.add_link(0, 1, 100, 1, 1);  // 0
  net.add_link(1, 2, 100, 1, 1);  // 1
  net.add_link(0, 2, 100, 1, 9);  // 2
  net.add_link(3, 4, 100, 1, 2);  // 3
  net.add_link(2, 3, 100, 1, 4);  // 4
  return net;
}

TEST(DomainPaths, RoutesStayInsideDomain) {
  const auto net = two_domain_line();
  const DomainPaths paths(net);
  EXPECT_EQ(paths.distance(0, 2), 2);
  EXPECT_EQ(paths.route(0, 2), (std::vector<LinkId>{0, 1}));
  EXPECT_EQ(paths.route(2, 0), (std::vector<LinkId>{1, 0}));
  EXPECT_EQ(paths.route(1, 1), std::vector<LinkId>{});
  EXPECT_FALSE(paths.route(0, 3).has_value());
  EXPECT_EQ(paths.distance(0, 4), kUnreachable);
  const auto span = paths.route_links(0, 2);
  EXPECT_EQ(std::vector<LinkId>(span.begin(), span.end()), (std::vector<LinkId>{0, 1}));
}

TEST(LeastDelay, CrossesDomainsAndHonoursFilter) {
  const auto net = two_domain_line();
  EXPECT_EQ(least_delay_path(net, 0, 4, [](const PhysicalLink&) { return true; }),
            (std::vector<LinkId>{0, 1, 4, 3}));
  // Dropping link 1 forces the slow chord.
  EXPECT_EQ(least_delay_path(net, 0, 4, [](const PhysicalLink& l) { return l.id != 1; }),
            (std::vector<LinkId>{2, 4, 3}));
  EXPECT_FALSE(least_delay_path(net, 0, 4, [](const PhysicalLink& l) { return l.id != 4; }).has_value());
  EXPECT_EQ(least_delay_path(net, 2, 2, [](const PhysicalLink&) { return true; }), std::vector<LinkId>{});
}

TEST(LeastDelay, MatchesFilteredDijkstraOnGeneratedSubstrates) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto net = generate_substrate(SubstrateConfig{}, seed);
    Rng rng(seed);
    for (int q = 0; q < 40; ++q) {
      const NodeId s = rng.uniform_int(0, net.node_count() - 1);
      const NodeId d = rng.uniform_int(0, net.node_count() - 1);
      const int demand = rng.uniform_int(1000, 3000);
      const auto path = least_delay_path(net, s, d, [&](const PhysicalLink& l) { return l.bw_residual >= demand; });
      const auto expected = oracle::filtered_delay(net, s, d, demand);
      if (expected == oracle::kInf) {
        EXPECT_FALSE(path.has_value());
      } else {
        ASSERT_TRUE(path.has_value());
        EXPECT_EQ(path_delay(net, *path), expected);
        EXPECT_TRUE(is_contiguous(net, *path, s, d));
      }
    }
  }
}

TEST(WidestPath, PicksLargestBottleneck) {
  SubstrateNetwork net(1);
  for (int i = 0; i < 4; ++i) net.add_node(0, 10, 1, 1);
  net.add_link(0, 1, 5, 1, 1);
  net.add_link(1, 3, 5, 1, 1);
  net.add_link(0, 2, 9, 1, 5);
  net.add_link(2, 3, 8, 1, 5);
  const auto w = widest_path(
      net, 0, 3, [](const PhysicalLink& l) { return l.bw_residual; }, [](const PhysicalLink&) { return true; });
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->bottleneck, 8);
  EXPECT_EQ(w->links, (std::vector<LinkId>{2, 3}));
}

TEST(PathHelpers, ContiguityAndDelay) {
  const auto net = two_domain_line();
  const std::vector<LinkId> good{0, 1, 4};
  EXPECT_TRUE(is_contiguous(net, good, 0, 3));
  EXPECT_FALSE(is_contiguous(net, good, 0, 4));
  EXPECT_FALSE(is_contiguous(net, std::vector<LinkId>{0, 3}, 0, 4));
  EXPECT_EQ(path_delay(net, good), 6);
}

}  // namespace
