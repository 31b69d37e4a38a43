#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "../fixtures.hpp"
#include "../oracles.hpp"
#include "xdvne/embedder.hpp"
#include "xdvne/rng.hpp"

namespace {

using namespace xdvne;

const ObjectiveWeights kUnit{};

VirtualNetworkRequest request(std::vector<int> demands, std::vector<std::tuple<int, int, int>> links) {
  VirtualNetworkRequest vnr;
  for (std::size_t i = 0; i < demands.size(); ++i) vnr.nodes.push_back({static_cast<int>(i), demands[i]});
  for (const auto& [a, b, bw] : links) vnr.links.push_back({static_cast<int>(vnr.links.size()), a, b, bw});
  return vnr;
}

// Chain 0-1-2-3 inside one domain; residual bandwidth per link as given.
SubstrateNetwork chain(const std::vector<int>& bw) {
  SubstrateNetwork net(1);
  for (std::size_t i = 0; i <= bw.size(); ++i) net.add_node(0, 100, 1, 1);
  for (std::size_t i = 0; i < bw.size(); ++i) net.add_link(static_cast<NodeId>(i), static_cast<NodeId>(i + 1), bw[i], 1, 1);
  return net;
}

TEST(Feasibility, NodeChecks) {
  SubstrateNetwork net(2);
  net.add_node(0, 5, 1, 1);
  net.add_node(1, 300, 1, 1);
  const DomainId zero[] = {0};
  EXPECT_TRUE(check_node_feasible({0, 5}, net.node(0), zero));
  EXPECT_FALSE(check_node_feasible({0, 6}, net.node(0), zero));
  EXPECT_FALSE(check_node_feasible({0, 1}, net.node(1), zero));
}

TEST(Feasibility, LinkChecks) {
  const auto net = chain({10, 9, 8});
  const VirtualLink vl{0, 0, 1, 8};
  EXPECT_TRUE(check_link_feasible(vl, net, std::vector<LinkId>{0, 1, 2}));
  const auto tight = chain({10, 7});
  EXPECT_FALSE(check_link_feasible(vl, tight, std::vector<LinkId>{0, 1}));
}

TEST(Feasibility, SplitShares) {
  SubstrateNetwork net(1);
  net.add_node(0, 10, 1, 1);
  net.add_node(0, 10, 1, 1);
  net.add_node(0, 10, 1, 1);
  net.add_link(0, 2, 5, 1, 1);
  net.add_link(0, 1, 3, 1, 1);
  net.add_link(1, 2, 3, 1, 1);
  const VirtualLink vl{0, 0, 1, 8};
  const std::vector<PathShare> ok{{{0}, 5}, {{1, 2}, 3}};
  EXPECT_TRUE(check_split_feasible(vl, net, ok));
  const std::vector<PathShare> short_total{{{0}, 5}, {{1, 2}, 2}};
  EXPECT_FALSE(check_split_feasible(vl, net, short_total));
  const std::vector<PathShare> over{{{0}, 6}, {{1, 2}, 2}};
  EXPECT_FALSE(check_split_feasible(vl, net, over));
}

TEST(Costs, NodeMappingCost) {
  PhysicalNode pn;
  pn.cpu_price = 2;
  pn.delay = 3;
  EXPECT_DOUBLE_EQ(node_mapping_cost({0, 5}, pn, kUnit), 13.0);
  EXPECT_DOUBLE_EQ(node_mapping_cost({0, 0}, pn, kUnit), 3.0);
  EXPECT_DOUBLE_EQ(node_mapping_cost({0, 5}, pn, ObjectiveWeights{2.0, 0.5}), 21.5);
  PhysicalLink pl;
  pl.bw_price = 1;
  pl.delay = 4;
  EXPECT_DOUBLE_EQ(link_hop_cost(8, pl, kUnit), 12.0);
}

// One domain whose three nodes cost 13, 9 and 20 for a demand-5 request.
SubstrateNetwork priced_domain() {
  SubstrateNetwork net(1);
  net.add_node(0, 50, 2, 3);  // 13
  net.add_node(0, 50, 1, 4);  // 9
  net.add_node(0, 50, 3, 5);  // 20
  net.add_link(0, 1, 100, 1, 1);
  net.add_link(1, 2, 100, 1, 1);
  return net;
}

TEST(Candidates, CheapestPrefixInOrder) {
  const auto net = priced_domain();
  const auto vnr = request({5}, {});
  const VnrSubgraph sub{0, {0}, {}};
  const auto c = select_candidates(vnr, sub, net, 2, kUnit);
  ASSERT_EQ(c.of(0).size(), 2u);
  EXPECT_EQ(c.of(0)[0], (Candidate{1, 9.0}));
  EXPECT_EQ(c.of(0)[1], (Candidate{0, 13.0}));
  EXPECT_EQ(select_candidates(vnr, sub, net, 1, kUnit).of(0).front().node, 1);
}

TEST(Candidates, MarkingLeavesLaterNodeEmpty) {
  SubstrateNetwork net(1);
  net.add_node(0, 6, 1, 1);
  net.add_node(0, 2, 1, 1);
  net.add_link(0, 1, 10, 1, 1);
  // Only node 0 fits either demand; the larger demand goes first.
  const auto vnr = request({3, 5}, {{0, 1, 1}});
  const auto c = select_candidates(vnr, VnrSubgraph{0, {0, 1}, {0}}, net, 2, kUnit);
  EXPECT_EQ(c.of(1).size(), 1u);
  EXPECT_EQ(c.of(1).front().node, 0);
  EXPECT_TRUE(c.of(0).empty());
  EXPECT_FALSE(c.complete());
}

TEST(Candidates, ProcessingOrderByDemandThenId) {
  const auto vnr = request({4, 9, 4, 7}, {});
  const std::vector<int> all{0, 1, 2, 3};
  EXPECT_EQ(processing_order(vnr, all), (std::vector<int>{1, 3, 0, 2}));
}

TEST(Candidates, MatchesBruteForceOnRandomDomains) {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    SubstrateNetwork net(1);
    for (int i = 0; i < 10; ++i) net.add_node(0, rng.uniform_int(1, 12), rng.uniform_int(1, 3), rng.uniform_int(0, 4));
    const int n = rng.uniform_int(1, 5);
    std::vector<int> demands;
    for (int i = 0; i < n; ++i) demands.push_back(rng.uniform_int(1, 10));
    const auto vnr = request(demands, {});
    std::vector<int> members(n);
    for (int i = 0; i < n; ++i) members[i] = i;
    const int k = rng.uniform_int(1, 3);
    const auto got = select_candidates(vnr, VnrSubgraph{0, members, {}}, net, k, kUnit);

    // Reference: demand-descending order, full sort of every feasible node,
    // then the unmarked prefix.
    std::vector<int> order = members;
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return demands[x] > demands[y]; });
    std::set<NodeId> marked;
    for (int v : order) {
      std::vector<std::pair<double, NodeId>> all;
      for (const auto& pn : net.nodes()) {
        if (pn.cpu_residual >= demands[v]) all.emplace_back(demands[v] * pn.cpu_price + pn.delay, pn.id);
      }
      std::sort(all.begin(), all.end());
      std::vector<Candidate> expect;
      for (const auto& [cost, id] : all) {
        if (static_cast<int>(expect.size()) == k) break;
        if (!marked.contains(id)) expect.push_back({id, cost});
      }
      for (const auto& c : expect) marked.insert(c.node);
      ASSERT_EQ(got.of(v), expect) << "trial " << trial << " vnode " << v;
      for (std::size_t i = 1; i < expect.size(); ++i) {
        EXPECT_TRUE(expect[i - 1].cost < expect[i].cost ||
                    (expect[i - 1].cost == expect[i].cost && expect[i - 1].node < expect[i].node));
      }
    }
  }
}

TEST(Partition, CheapDomainDominates) {
  SubstrateNetwork net(3);
  for (DomainId d = 0; d < 3; ++d) {
    const int price = d == 1 ? 1 : 10;
    // Six nodes so k=2 marking leaves room for all three virtual nodes.
    for (int i = 0; i < 6; ++i) net.add_node(d, 100, price, 2);
    const NodeId base = 6 * d;
    for (int i = 0; i < 5; ++i) net.add_link(base + i, base + i + 1, 100, price, 2);
  }
  net.add_link(0, 6, 100, 10, 2);
  net.add_link(7, 12, 100, 10, 2);
  const auto vnr = request({3, 4, 5}, {{0, 1, 5}, {1, 2, 5}});
  const auto p = partition_vnr(vnr, net, EmbedConfig{});
  ASSERT_TRUE(p.has_value());
  EXPECT_TRUE(p->exhaustive);
  EXPECT_EQ(p->assignment, (std::vector<DomainId>{1, 1, 1}));
  EXPECT_TRUE(p->cut_links.empty());
  ASSERT_EQ(p->subgraphs.size(), 1u);
  EXPECT_EQ(p->subgraphs[0].virtual_links, (std::vector<int>{0, 1}));
}

TEST(Partition, SingleNodeGoesToGlobalArgmin) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto net = generate_substrate(SubstrateConfig{}, seed);
    const auto vnr = request({static_cast<int>(seed % 10) + 1}, {});
    const auto p = partition_vnr(vnr, net, EmbedConfig{});
    ASSERT_TRUE(p.has_value());
    double best = 1e300;
    for (const auto& pn : net.nodes()) best = std::min(best, oracle::node_term(vnr.nodes[0], pn, kUnit));
    const auto e = embed(vnr, net, EmbedConfig{});
    ASSERT_TRUE(e.accepted());
    EXPECT_DOUBLE_EQ(e.objective, best);
    EXPECT_EQ(net.node(e.node_map[0]).domain, p->assignment[0]);
  }
}

TEST(Partition, ToyAssignmentMatchesExhaustiveScoring) {
  const EmbedConfig cfg;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto t = fixtures::toy_instance(seed);
    const auto p = partition_vnr(t.vnr, t.net, cfg);
    ASSERT_TRUE(p.has_value());
    std::optional<double> best;
    std::vector<DomainId> arg;
    for (DomainId a = 0; a < 2; ++a) {
      for (DomainId b = 0; b < 2; ++b) {
        const std::vector<DomainId> v{a, b};
        const auto s = estimate_assignment(t.vnr, t.net, v, cfg);
        if (s && (!best || *s < *best - 1e-9)) {
          best = s;
          arg = v;
        }
      }
    }
    EXPECT_EQ(p->assignment, arg) << "seed " << seed;
    EXPECT_DOUBLE_EQ(p->estimate, *best);
  }
}

TEST(Partition, InfeasibleEverywhereIsRejected) {
  const auto net = priced_domain();
  EXPECT_FALSE(partition_vnr(request({51}, {}), net, EmbedConfig{}).has_value());
}

TEST(Partition, GreedyBeyondExhaustiveLimit) {
  const auto net = generate_substrate(SubstrateConfig{}, 2);
  VnrConfig vc;
  vc.node_count_range = {8, 8};
  const auto vnr = generate_vnr(vc, 4, 0, 0.0);
  const auto p = partition_vnr(vnr, net, EmbedConfig{});
  ASSERT_TRUE(p.has_value());
  EXPECT_FALSE(p->exhaustive);
  EXPECT_EQ(p->assignment.size(), 8u);
}

TEST(Partition, MakePartitionSplitsCutLinks) {
  const auto vnr = request({1, 1, 1}, {{0, 1, 5}, {1, 2, 5}, {0, 2, 5}});
  const std::vector<DomainId> a{0, 0, 2};
  const auto p = make_partition(vnr, a);
  ASSERT_EQ(p.subgraphs.size(), 2u);
  EXPECT_EQ(p.subgraphs[0].domain, 0);
  EXPECT_EQ(p.subgraphs[0].virtual_nodes, (std::vector<int>{0, 1}));
  EXPECT_EQ(p.subgraphs[0].virtual_links, std::vector<int>{0});
  EXPECT_EQ(p.subgraphs[1].virtual_nodes, std::vector<int>{2});
  EXPECT_EQ(p.cut_links, (std::vector<int>{1, 2}));
}

TEST(IntraDomain, AdjacentCheapestPairUsesOneHop) {
  const auto net = priced_domain();
  const DomainPaths paths(net);
  const auto vnr = request({5, 5}, {{0, 1, 8}});
  const VnrSubgraph sub{0, {0, 1}, {0}};
  const auto cands = select_candidates(vnr, sub, net, 2, kUnit);
  BandwidthLedger ledger;
  const auto m = map_intra_domain(vnr, sub, cands, net, paths, EmbedConfig{}, ledger);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->links.at(0).hop_count(), 1);
  EXPECT_EQ(ledger.used(m->links.at(0).paths[0].links[0]), 8);
}

// Four nodes; only the (1, 3) pairing has an adjacent link with room.
SubstrateNetwork saturated_square() {
  SubstrateNetwork net(1);
  for (int price = 1; price <= 4; ++price) net.add_node(0, 100, price, 1);
  net.add_link(0, 2, 5, 1, 1);
  net.add_link(0, 3, 5, 1, 1);
  net.add_link(1, 2, 5, 1, 1);
  net.add_link(1, 3, 100, 1, 1);
  net.add_link(0, 1, 5, 1, 10);
  net.add_link(2, 3, 5, 1, 10);
  return net;
}

TEST(IntraDomain, BacktracksPastSaturatedCombination) {
  const auto net = saturated_square();
  const DomainPaths paths(net);
  const auto vnr = request({5, 4}, {{0, 1, 8}});
  const VnrSubgraph sub{0, {0, 1}, {0}};
  const auto cands = select_candidates(vnr, sub, net, 2, kUnit);
  ASSERT_EQ(cands.of(0).front().node, 0);
  ASSERT_EQ(cands.of(1).front().node, 2);

  // Exhaustive over the candidate product: exactly one combination routes.
  std::vector<std::pair<NodeId, NodeId>> feasible;
  for (const auto& a : cands.of(0)) {
    for (const auto& b : cands.of(1)) {
      const auto r = paths.route(a.node, b.node);
      if (r && check_link_feasible(vnr.links[0], net, *r)) feasible.emplace_back(a.node, b.node);
    }
  }
  ASSERT_EQ(feasible.size(), 1u);

  for (bool best : {true, false}) {
    EmbedConfig cfg;
    cfg.best_combination = best;
    BandwidthLedger ledger;
    const auto m = map_intra_domain(vnr, sub, cands, net, paths, cfg, ledger);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(m->nodes.at(0), feasible[0].first);
    EXPECT_EQ(m->nodes.at(1), feasible[0].second);
  }
  EmbedConfig one_try;
  one_try.backtrack_limit = 1;
  BandwidthLedger ledger;
  EXPECT_FALSE(map_intra_domain(vnr, sub, cands, net, paths, one_try, ledger).has_value());
}

TEST(IntraDomain, NoLinksMeansNodesOnly) {
  const auto net = priced_domain();
  const DomainPaths paths(net);
  const auto vnr = request({5}, {});
  const VnrSubgraph sub{0, {0}, {}};
  BandwidthLedger ledger;
  const auto m = map_intra_domain(vnr, sub, select_candidates(vnr, sub, net, 2, kUnit), net, paths, EmbedConfig{},
                                  ledger);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->nodes.at(0), 1);
  EXPECT_TRUE(m->links.empty());
}

TEST(IntraDomain, BestCombinationNeverWorseThanFirstFeasible) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto net = generate_substrate(SubstrateConfig{}, seed);
    const auto vnr = generate_vnr(VnrConfig{}, seed, 0, 0.0);
    EmbedConfig first;
    first.best_combination = false;
    const auto a = embed(vnr, net, EmbedConfig{});
    const auto b = embed(vnr, net, first);
    ASSERT_TRUE(a.accepted());
    ASSERT_TRUE(b.accepted());
    EXPECT_LE(a.objective, b.objective + 1e-9);
  }
}

// Two domains of two nodes joined by a single inter-domain link 1-2.
SubstrateNetwork bridged(int bridge_bw) {
  SubstrateNetwork net(2);
  for (int i = 0; i < 4; ++i) net.add_node(i < 2 ? 0 : 1, 100, 1, 1);
  net.add_link(0, 1, 100, 1, 1);
  net.add_link(2, 3, 100, 1, 1);
  net.add_link(1, 2, bridge_bw, 1, 1);
  return net;
}

TEST(InterDomain, UniqueRouteUsesTheBridge) {
  const auto net = bridged(100);
  const auto vnr = request({1, 1}, {{0, 1, 10}});
  const std::vector<NodeId> node_map{0, 3};
  const std::vector<int> cut{0};
  BandwidthLedger ledger;
  const auto m = map_inter_domain(vnr, cut, node_map, net, EmbedConfig{}, ledger);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->at(0).paths[0].links, (std::vector<LinkId>{0, 2, 1}));
  EXPECT_EQ(ledger.used(2), 10);
}

TEST(InterDomain, BridgeTooNarrowRejects) {
  const auto net = bridged(9);
  const auto vnr = request({1, 1}, {{0, 1, 10}});
  const std::vector<NodeId> node_map{0, 3};
  const std::vector<int> cut{0};
  BandwidthLedger ledger;
  EXPECT_FALSE(map_inter_domain(vnr, cut, node_map, net, EmbedConfig{}, ledger).has_value());
  EXPECT_EQ(ledger.used(2), 0);
}

TEST(InterDomain, MatchesFilteredDijkstra) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto net = generate_substrate(SubstrateConfig{}, seed);
    Rng rng(seed * 13);
    // Load some links so the bandwidth filter matters.
    for (const auto& l : net.links()) {
      if (rng.bernoulli(0.3)) net.reserve_bw(l.id, l.bw_capacity - rng.uniform_int(1, 20));
    }
    for (int q = 0; q < 30; ++q) {
      const NodeId a = rng.uniform_int(0, 29);
      const NodeId b = rng.uniform_int(30, 119);
      const auto vnr = request({1, 1}, {{0, 1, rng.uniform_int(5, 15)}});
      const std::vector<NodeId> node_map{a, b};
      const std::vector<int> cut{0};
      BandwidthLedger ledger;
      const auto m = map_inter_domain(vnr, cut, node_map, net, EmbedConfig{}, ledger);
      const auto expected = oracle::filtered_delay(net, a, b, vnr.links[0].bw_demand);
      if (expected == oracle::kInf) {
        EXPECT_FALSE(m.has_value());
        continue;
      }
      ASSERT_TRUE(m.has_value());
      EXPECT_EQ(path_delay(net, m->at(0).paths[0].links), expected);
    }
  }
}

TEST(Splitting, TwoPathsWhenEnabled) {
  // Two parallel two-hop routes of width 5 between nodes 0 and 3.
  SubstrateNetwork net(1);
  for (int i = 0; i < 4; ++i) net.add_node(0, 100, 1, 1);
  net.add_link(0, 1, 5, 1, 1);
  net.add_link(1, 3, 5, 1, 1);
  net.add_link(0, 2, 5, 1, 2);
  net.add_link(2, 3, 5, 1, 2);
  const DomainPaths paths(net);
  const VirtualLink vl{0, 0, 1, 8};
  BandwidthLedger ledger;
  EXPECT_FALSE(route_virtual_link(vl, 0, 3, net, paths, EmbedConfig{}, ledger).has_value());
  EmbedConfig split;
  split.splitting = true;
  const auto m = route_virtual_link(vl, 0, 3, net, paths, split, ledger);
  ASSERT_TRUE(m.has_value());
  ASSERT_EQ(m->paths.size(), 2u);
  EXPECT_TRUE(check_split_feasible(vl, net, m->paths));
  EXPECT_EQ(m->hop_count(), 4);
}

TEST(Embed, OversizedDemandRejectedWithoutSideEffects) {
  const auto net = generate_substrate(SubstrateConfig{}, 3);
  const auto before = net.snapshot();
  const auto e = embed(request({301, 1}, {{0, 1, 5}}), net, EmbedConfig{});
  EXPECT_FALSE(e.accepted());
  EXPECT_EQ(e.reason, RejectReason::kNoCandidates);
  EXPECT_TRUE(e.node_map.empty());
  EXPECT_EQ(net.snapshot(), before);
}

TEST(Embed, FullyLoadedSubstrateRejects) {
  auto net = generate_substrate(SubstrateConfig{}, 3);
  for (const auto& n : net.nodes()) net.reserve_cpu(n.id, n.cpu_capacity);
  EXPECT_FALSE(embed(request({1, 1}, {{0, 1, 5}}), net, EmbedConfig{}).accepted());
  net.reset_residuals();
  for (const auto& l : net.links()) net.reserve_bw(l.id, l.bw_capacity);
  const auto e = embed(request({1, 1}, {{0, 1, 5}}), net, EmbedConfig{});
  EXPECT_FALSE(e.accepted());
  EXPECT_EQ(e.reason, RejectReason::kIntraDomainMapping);
}

TEST(Embed, InvalidRequestRejected) {
  const auto net = priced_domain();
  const auto e = embed(request({1, 1}, {}), net, EmbedConfig{});
  EXPECT_EQ(e.reason, RejectReason::kInvalidRequest);
}

TEST(Embed, ToyInstancesNeverBeatExhaustiveOptimum) {
  const EmbedConfig cfg;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    for (bool tight : {false, true}) {
      const auto t = fixtures::toy_instance(seed, 2, tight);
      const auto best = oracle::brute_force_optimum(t.vnr, t.net, kUnit);
      const auto e = embed(t.vnr, t.net, cfg);
      if (!best) {
        EXPECT_FALSE(e.accepted());
        continue;
      }
      if (e.accepted()) EXPECT_GE(e.objective, *best - 1e-9) << "seed " << seed;
    }
  }
}

TEST(Embed, SafetyInvariantsOnRandomWorkloads) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto net = generate_substrate(SubstrateConfig{}, seed);
    Rng rng(seed);
    for (const auto& l : net.links()) net.reserve_bw(l.id, l.bw_capacity - rng.uniform_int(1, 30));
    for (const auto& n : net.nodes()) net.reserve_cpu(n.id, n.cpu_capacity - rng.uniform_int(1, 12));
    const DomainPaths paths(net);
    for (bool split : {false, true}) {
      EmbedConfig cfg;
      cfg.splitting = split;
      for (int i = 0; i < 40; ++i) {
        const auto vnr = generate_vnr(VnrConfig{}, seed, i, 0.0);
        const auto before = net.snapshot();
        const auto e = embed(vnr, net, paths, cfg);
        ASSERT_EQ(net.snapshot(), before);
        ASSERT_EQ(e, embed(vnr, SubstrateNetwork(net), cfg));
        if (!e.accepted()) {
          EXPECT_TRUE(e.node_map.empty());
          EXPECT_TRUE(e.link_map.empty());
          continue;
        }
        const auto problem = oracle::check_embedding(e, vnr, net);
        ASSERT_TRUE(problem.empty()) << problem;
        const auto m = oracle::recompute(e, vnr, net, kUnit);
        EXPECT_NEAR(e.objective, m.objective, 1e-9);
        EXPECT_NEAR(e.cost, m.cost, 1e-9);
        EXPECT_NEAR(e.delay, m.delay, 1e-9);
      }
    }
  }
}

TEST(Metrics, ObjectiveArithmetic) {
  SubstrateNetwork net(1);
  net.add_node(0, 10, 2, 3);
  net.add_node(0, 10, 1, 0);
  net.add_link(0, 1, 10, 1, 4);
  Embedding e;
  e.status = EmbedStatus::kAccepted;
  e.node_map = {0};
  e.node_cpu = {5};
  EXPECT_DOUBLE_EQ(objective_value(e, net, kUnit), 13.0);
  e.link_map = {LinkMapping{{PathShare{{0}, 8}}}};
  EXPECT_DOUBLE_EQ(objective_value(e, net, kUnit), 25.0);
}

TEST(Metrics, CostArithmetic) {
  Embedding e;
  e.status = EmbedStatus::kAccepted;
  e.node_map = {0, 1};
  e.node_cpu = {5, 10};
  e.link_map = {LinkMapping{{PathShare{{0, 1, 2}, 8}}}};
  EXPECT_DOUBLE_EQ(embedding_cost(e), 39.0);
  e.link_map = {LinkMapping{{PathShare{{0}, 8}}}};
  EXPECT_DOUBLE_EQ(embedding_cost(e), 23.0);
  e.link_map = {LinkMapping{{PathShare{{0}, 5}, PathShare{{1, 2}, 3}}}};
  EXPECT_DOUBLE_EQ(embedding_cost(e), 15.0 + 5.0 + 6.0);
}

TEST(Metrics, DelayArithmetic) {
  SubstrateNetwork net(1);
  net.add_node(0, 10, 1, 3);
  net.add_node(0, 10, 1, 0);
  net.add_node(0, 10, 1, 4);
  net.add_link(0, 1, 10, 1, 1);
  net.add_link(1, 2, 10, 1, 2);
  Embedding e;
  e.status = EmbedStatus::kAccepted;
  e.node_map = {0};
  e.node_cpu = {1};
  EXPECT_DOUBLE_EQ(embedding_delay(e, net), 3.0);
  e.node_map = {0, 2};
  e.node_cpu = {1, 1};
  e.link_map = {LinkMapping{{PathShare{{0, 1}, 1}}}};
  EXPECT_DOUBLE_EQ(embedding_delay(e, net), 10.0);
}

TEST(Metrics, RejectedEmbeddingIsAContractError) {
  const auto net = priced_domain();
  const auto e = Embedding::rejected(1, RejectReason::kNoCandidates);
  EXPECT_THROW(embedding_cost(e), std::logic_error);
  EXPECT_THROW(embedding_delay(e, net), std::logic_error);
  EXPECT_THROW(objective_value(e, net, kUnit), std::logic_error);
}

}  // namespace
