#include "xdvne/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "xdvne/rng.hpp"

namespace xdvne {

namespace {

RejectReason routing_failure(const SubstrateNetwork& net, std::span<const NodeId> placement) {
  for (NodeId n : placement) {
    if (net.node(n).domain != net.node(placement.front()).domain) return RejectReason::kInterDomainMapping;
  }
  return RejectReason::kIntraDomainMapping;
}

struct Evaluation {
  double objective = INFINITY;
  std::vector<LinkMapping> links;
  bool feasible = false;
};

Evaluation evaluate(const VirtualNetworkRequest& vnr, std::span<const NodeId> placement,
                    const SubstrateNetwork& net, const DomainPaths& paths, const EmbedConfig& cfg) {
  Evaluation e;
  auto links = route_all_links(vnr, placement, net, paths, cfg);
  if (!links) return e;
  double total = 0.0;
  for (int v = 0; v < vnr.node_count(); ++v) total += node_mapping_cost(vnr.nodes[v], net.node(placement[v]), cfg.weights);
  for (const auto& m : *links) {
    for (const auto& share : m.paths) {
      for (LinkId id : share.links) total += link_hop_cost(share.bandwidth, net.link(id), cfg.weights);
    }
  }
  e.objective = total;
  e.links = std::move(*links);
  e.feasible = true;
  return e;
}

}  // namespace

std::vector<int> border_hop_distances(const SubstrateNetwork& net) {
  std::vector<int> hops(net.node_count(), -1);
  std::queue<NodeId> frontier;
  for (const auto& n : net.nodes()) {
    if (n.is_border) {
      hops[n.id] = 0;
      frontier.push(n.id);
    }
  }
  while (!frontier.empty()) {
    const NodeId at = frontier.front();
    frontier.pop();
    for (LinkId id : net.incident(at)) {
      const auto& l = net.link(id);
      if (l.kind != LinkKind::kIntra) continue;
      const NodeId to = l.other(at);
      if (hops[to] < 0) {
        hops[to] = hops[at] + 1;
        frontier.push(to);
      }
    }
  }
  return hops;
}

std::vector<NodeId> rank_by_border_distance(const VirtualNode& vn, const SubstrateNetwork& net,
                                            const std::vector<int>& border_hops) {
  std::vector<NodeId> ranked;
  for (const auto& n : net.nodes()) {
    if (n.cpu_residual >= vn.cpu_demand) ranked.push_back(n.id);
  }
  // Nodes of a domain without border nodes sort last.
  auto distance = [&](NodeId n) {
    return border_hops[n] < 0 ? std::numeric_limits<int>::max() : border_hops[n];
  };
  std::sort(ranked.begin(), ranked.end(), [&](NodeId x, NodeId y) {
    if (distance(x) != distance(y)) return distance(x) < distance(y);
    const int rx = net.node(x).cpu_residual;
    const int ry = net.node(y).cpu_residual;
    return rx != ry ? rx > ry : x < y;
  });
  return ranked;
}

Embedding embed_boundary_hops(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                              const EmbedConfig& cfg) {
  const DomainPaths paths(net);
  return embed_boundary_hops(vnr, net, paths, cfg);
}

Embedding embed_boundary_hops(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                              const DomainPaths& paths, const EmbedConfig& cfg) {
  if (!vnr.validate().empty()) return Embedding::rejected(vnr.id, RejectReason::kInvalidRequest);
  const int n = vnr.node_count();
  const auto hops = border_hop_distances(net);
  const std::size_t list_length = static_cast<std::size_t>(std::max(1, cfg.k)) * n;

  std::vector<std::vector<NodeId>> lists(n);
  for (int v = 0; v < n; ++v) {
    lists[v] = rank_by_border_distance(vnr.nodes[v], net, hops);
    if (lists[v].size() > list_length) lists[v].resize(list_length);
    if (lists[v].empty()) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
  }

  std::vector<NodeId> placement(n, -1);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (int v : processing_order(vnr, all)) {
    for (NodeId c : lists[v]) {
      if (std::find(placement.begin(), placement.end(), c) == placement.end()) {
        placement[v] = c;
        break;
      }
    }
    if (placement[v] < 0) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
  }

  Evaluation current = evaluate(vnr, placement, net, paths, cfg);
  Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(vnr.id)));
  for (int it = 0; it < cfg.local_search_iterations; ++it) {
    const int v = rng.uniform_int(0, n - 1);
    const auto& list = lists[v];
    const NodeId pick = list[rng.uniform_int(0, static_cast<int>(list.size()) - 1)];
    if (pick == placement[v]) continue;
    std::vector<NodeId> trial = placement;
    const auto holder = std::find(placement.begin(), placement.end(), pick);
    if (holder != placement.end()) {
      const int u = static_cast<int>(holder - placement.begin());
      if (net.node(placement[v]).cpu_residual < vnr.nodes[u].cpu_demand) continue;
      trial[u] = placement[v];
    }
    trial[v] = pick;
    Evaluation candidate = evaluate(vnr, trial, net, paths, cfg);
    if (candidate.feasible && (!current.feasible || candidate.objective < current.objective)) {
      placement = std::move(trial);
      current = std::move(candidate);
    }
  }
  if (!current.feasible) return Embedding::rejected(vnr.id, routing_failure(net, placement));
  return assemble_embedding(vnr, std::move(placement), std::move(current.links), net, cfg.weights);
}

namespace {

// Injective CPU-feasible assignment exists iff the sorted demands fit the
// sorted residuals position by position.
bool can_host(const VirtualNetworkRequest& vnr, std::vector<int> residuals) {
  if (residuals.size() < vnr.nodes.size()) return false;
  std::vector<int> demands;
  for (const auto& vn : vnr.nodes) demands.push_back(vn.cpu_demand);
  std::sort(demands.rbegin(), demands.rend());
  std::sort(residuals.rbegin(), residuals.rend());
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (demands[i] > residuals[i]) return false;
  }
  return true;
}

}  // namespace

Embedding embed_link_first(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                           const EmbedConfig& cfg) {
  if (!vnr.validate().empty()) return Embedding::rejected(vnr.id, RejectReason::kInvalidRequest);
  const int n = vnr.node_count();
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const auto order = processing_order(vnr, all);

  if (n == 1) {
    // No links to steer placement: largest residual wins.
    NodeId best = -1;
    for (const auto& pn : net.nodes()) {
      if (pn.cpu_residual < vnr.nodes[0].cpu_demand) continue;
      if (best < 0 || pn.cpu_residual > net.node(best).cpu_residual) best = pn.id;
    }
    if (best < 0) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
    return assemble_embedding(vnr, {best}, {}, net, cfg.weights);
  }

  int max_bw = 0;
  for (const auto& l : vnr.links) max_bw = std::max(max_bw, l.bw_demand);

  std::vector<LinkId> edges;
  for (const auto& l : net.links()) {
    if (l.bw_residual >= max_bw) edges.push_back(l.id);
  }
  auto weight = [&](LinkId id) {
    const auto& l = net.link(id);
    return cfg.weights.price * (static_cast<double>(l.bw_price) * max_bw) + cfg.weights.delay * l.delay;
  };
  std::sort(edges.begin(), edges.end(), [&](LinkId x, LinkId y) {
    const double wx = weight(x);
    const double wy = weight(y);
    return wx != wy ? wx < wy : x < y;
  });

  // Kruskal with explicit member lists so a component can be tested as soon
  // as it grows.
  std::vector<int> component(net.node_count());
  std::iota(component.begin(), component.end(), 0);
  std::vector<std::vector<NodeId>> members(net.node_count());
  for (NodeId i = 0; i < net.node_count(); ++i) members[i] = {i};
  std::vector<std::vector<LinkId>> tree_links(net.node_count());
  int chosen = -1;
  for (LinkId id : edges) {
    const auto& l = net.link(id);
    int ca = component[l.a];
    int cb = component[l.b];
    if (ca == cb) continue;
    if (members[ca].size() < members[cb].size()) std::swap(ca, cb);
    for (NodeId m : members[cb]) component[m] = ca;
    members[ca].insert(members[ca].end(), members[cb].begin(), members[cb].end());
    members[cb].clear();
    tree_links[ca].insert(tree_links[ca].end(), tree_links[cb].begin(), tree_links[cb].end());
    tree_links[cb].clear();
    tree_links[ca].push_back(id);
    std::vector<int> residuals;
    for (NodeId m : members[ca]) residuals.push_back(net.node(m).cpu_residual);
    if (can_host(vnr, std::move(residuals))) {
      chosen = ca;
      break;
    }
  }
  if (chosen < 0) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);

  std::vector<std::vector<std::pair<NodeId, LinkId>>> tree(net.node_count());
  for (LinkId id : tree_links[chosen]) {
    const auto& l = net.link(id);
    tree[l.a].emplace_back(l.b, id);
    tree[l.b].emplace_back(l.a, id);
  }
  // Tree path from src: parent link per reached node.
  auto tree_search = [&](NodeId src) {
    std::vector<LinkId> via(net.node_count(), -1);
    std::vector<int> depth(net.node_count(), -1);
    std::queue<NodeId> frontier;
    depth[src] = 0;
    frontier.push(src);
    while (!frontier.empty()) {
      const NodeId at = frontier.front();
      frontier.pop();
      for (const auto& [to, id] : tree[at]) {
        if (depth[to] >= 0) continue;
        depth[to] = depth[at] + 1;
        via[to] = id;
        frontier.push(to);
      }
    }
    return std::pair{via, depth};
  };

  std::vector<NodeId> hosts = members[chosen];
  std::sort(hosts.begin(), hosts.end());
  std::vector<NodeId> placement(n, -1);
  std::vector<bool> used(net.node_count(), false);

  // The request root goes to the best-connected tree node able to host it.
  const int root = order.front();
  NodeId root_host = -1;
  for (NodeId h : hosts) {
    if (net.node(h).cpu_residual < vnr.nodes[root].cpu_demand) continue;
    if (root_host < 0 || tree[h].size() > tree[root_host].size() ||
        (tree[h].size() == tree[root_host].size() &&
         net.node(h).cpu_residual > net.node(root_host).cpu_residual)) {
      root_host = h;
    }
  }
  if (root_host < 0) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
  placement[root] = root_host;
  used[root_host] = true;

  // Remaining virtual nodes in breadth-first order over the request, each on
  // the nearest free tree node from its parent's host.
  std::vector<std::vector<int>> vadj(n);
  for (const auto& l : vnr.links) {
    vadj[l.a].push_back(l.b);
    vadj[l.b].push_back(l.a);
  }
  for (auto& nb : vadj) std::sort(nb.begin(), nb.end());
  std::queue<int> pending;
  pending.push(root);
  std::vector<bool> seen(n, false);
  seen[root] = true;
  while (!pending.empty()) {
    const int parent = pending.front();
    pending.pop();
    const auto [via, depth] = tree_search(placement[parent]);
    for (int child : vadj[parent]) {
      if (seen[child]) continue;
      seen[child] = true;
      NodeId best = -1;
      for (NodeId h : hosts) {
        if (used[h] || net.node(h).cpu_residual < vnr.nodes[child].cpu_demand) continue;
        if (best < 0 || depth[h] < depth[best]) best = h;
      }
      if (best < 0) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
      placement[child] = best;
      used[best] = true;
      pending.push(child);
    }
  }

  BandwidthLedger ledger;
  std::vector<LinkMapping> link_map(vnr.links.size());
  for (const auto& vl : vnr.links) {
    const auto [via, depth] = tree_search(placement[vl.a]);
    std::vector<LinkId> path;
    for (NodeId at = placement[vl.b]; at != placement[vl.a];) {
      path.push_back(via[at]);
      at = net.link(via[at]).other(at);
    }
    std::reverse(path.begin(), path.end());
    for (LinkId id : path) {
      if (ledger.available(net, id) < vl.bw_demand) {
        return Embedding::rejected(vnr.id, routing_failure(net, placement));
      }
    }
    PathShare share{std::move(path), vl.bw_demand};
    ledger.hold(share);
    link_map[vl.id].paths.push_back(std::move(share));
  }
  return assemble_embedding(vnr, std::move(placement), std::move(link_map), net, cfg.weights);
}

}  // namespace xdvne
