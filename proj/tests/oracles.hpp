#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the data types.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "xdvne/embedder.hpp"
#include "xdvne/paths.hpp"

namespace oracle {

inline constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

// Single-source Dijkstra with a binary heap.
inline std::vector<std::int64_t> dijkstra(int n, const std::vector<xdvne::WeightedEdge>& edges, int src) {
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(n);
  for (const auto& e : edges) {
    adj[e.u].emplace_back(e.v, e.weight);
    adj[e.v].emplace_back(e.u, e.weight);
  }
  std::vector<std::int64_t> dist(n, kInf);
  using Item = std::pair<std::int64_t, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0;
  heap.emplace(0, src);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& [v, w] : adj[u]) {
      if (d + w < dist[v]) {
        dist[v] = d + w;
        heap.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

// Dijkstra over the substrate restricted to links with residual >= demand.
inline std::int64_t filtered_delay(const xdvne::SubstrateNetwork& net, xdvne::NodeId src, xdvne::NodeId dst,
                                   int demand) {
  std::vector<xdvne::WeightedEdge> edges;
  for (const auto& l : net.links()) {
    if (l.bw_residual >= demand) edges.push_back({l.a, l.b, l.delay});
  }
  return dijkstra(net.node_count(), edges, src)[dst];
}

// Every simple path from src to dst, as link id sequences.
inline void simple_paths(const xdvne::SubstrateNetwork& net, xdvne::NodeId at, xdvne::NodeId dst,
                         std::vector<bool>& seen, std::vector<xdvne::LinkId>& trail,
                         std::vector<std::vector<xdvne::LinkId>>& out) {
  if (at == dst) {
    out.push_back(trail);
    return;
  }
  for (xdvne::LinkId id : net.incident(at)) {
    const xdvne::NodeId next = net.link(id).other(at);
    if (seen[next]) continue;
    seen[next] = true;
    trail.push_back(id);
    simple_paths(net, next, dst, seen, trail, out);
    trail.pop_back();
    seen[next] = false;
  }
}

inline std::vector<std::vector<xdvne::LinkId>> simple_paths(const xdvne::SubstrateNetwork& net, xdvne::NodeId src,
                                                            xdvne::NodeId dst) {
  std::vector<bool> seen(net.node_count(), false);
  std::vector<xdvne::LinkId> trail;
  std::vector<std::vector<xdvne::LinkId>> out;
  seen[src] = true;
  simple_paths(net, src, dst, seen, trail, out);
  return out;
}

inline double node_term(const xdvne::VirtualNode& vn, const xdvne::PhysicalNode& pn,
                        const xdvne::ObjectiveWeights& w) {
  return w.price * vn.cpu_demand * pn.cpu_price + w.delay * pn.delay;
}

inline double path_term(const xdvne::SubstrateNetwork& net, const std::vector<xdvne::LinkId>& path, int bw,
                        const xdvne::ObjectiveWeights& w) {
  double total = 0.0;
  for (auto id : path) total += w.price * bw * net.link(id).bw_price + w.delay * net.link(id).delay;
  return total;
}

// Minimum objective over every injective placement and, per virtual link,
// every bandwidth-feasible simple path. At most one virtual link, so no two
// paths compete for bandwidth; nullopt for anything larger.
inline std::optional<double> brute_force_optimum(const xdvne::VirtualNetworkRequest& vnr,
                                                 const xdvne::SubstrateNetwork& net,
                                                 const xdvne::ObjectiveWeights& w) {
  if (vnr.links.size() > 1) return std::nullopt;
  const int n = vnr.node_count();
  const int m = net.node_count();
  std::optional<double> best;
  std::vector<int> place(n, 0);
  while (true) {
    bool valid = true;
    std::set<int> used(place.begin(), place.end());
    if (static_cast<int>(used.size()) != n) valid = false;
    double nodes = 0.0;
    for (int v = 0; v < n && valid; ++v) {
      const auto& pn = net.node(place[v]);
      if (vnr.nodes[v].cpu_demand > pn.cpu_residual) valid = false;
      nodes += node_term(vnr.nodes[v], pn, w);
    }
    if (valid) {
      std::optional<double> links = 0.0;
      for (const auto& vl : vnr.links) {
        std::optional<double> cheapest;
        for (const auto& p : simple_paths(net, place[vl.a], place[vl.b])) {
          bool fits = true;
          for (auto id : p) fits = fits && net.link(id).bw_residual >= vl.bw_demand;
          if (!fits) continue;
          const double c = path_term(net, p, vl.bw_demand, w);
          if (!cheapest || c < *cheapest) cheapest = c;
        }
        if (!cheapest) {
          links.reset();
          break;
        }
        *links += *cheapest;
      }
      if (links && (!best || nodes + *links < *best)) best = nodes + *links;
    }
    int pos = n - 1;
    while (pos >= 0 && ++place[pos] == m) place[pos--] = 0;
    if (pos < 0) break;
  }
  return best;
}

struct Metrics {
  double objective = 0.0;
  double cost = 0.0;
  double delay = 0.0;
};

// Objective, cost and delay walked directly from the mapping.
inline Metrics recompute(const xdvne::Embedding& e, const xdvne::VirtualNetworkRequest& vnr,
                         const xdvne::SubstrateNetwork& net, const xdvne::ObjectiveWeights& w) {
  Metrics m;
  std::set<xdvne::NodeId> hosts;
  for (std::size_t v = 0; v < vnr.nodes.size(); ++v) {
    const auto& pn = net.node(e.node_map[v]);
    m.objective += node_term(vnr.nodes[v], pn, w);
    m.cost += vnr.nodes[v].cpu_demand;
    hosts.insert(pn.id);
  }
  for (auto h : hosts) m.delay += net.node(h).delay;
  for (std::size_t l = 0; l < vnr.links.size(); ++l) {
    for (const auto& share : e.link_map[l].paths) {
      m.objective += path_term(net, share.links, share.bandwidth, w);
      m.cost += static_cast<double>(share.bandwidth) * share.links.size();
      for (auto id : share.links) m.delay += net.link(id).delay;
    }
  }
  return m;
}

// Walks a path; returns the visited nodes or nullopt if it is not a walk
// from src to dst.
inline std::optional<std::vector<xdvne::NodeId>> walk(const xdvne::SubstrateNetwork& net,
                                                      const std::vector<xdvne::LinkId>& path, xdvne::NodeId src,
                                                      xdvne::NodeId dst) {
  std::vector<xdvne::NodeId> visited{src};
  xdvne::NodeId at = src;
  for (auto id : path) {
    const auto& l = net.link(id);
    if (l.a != at && l.b != at) return std::nullopt;
    at = l.other(at);
    visited.push_back(at);
  }
  if (at != dst) return std::nullopt;
  return visited;
}

// Structural safety of an accepted embedding against the substrate it was
// computed on: injective placement, CPU fits, contiguous cycle-free paths,
// shares sum to demand, per-link bandwidth fits. Empty string when fine.
inline std::string check_embedding(const xdvne::Embedding& e, const xdvne::VirtualNetworkRequest& vnr,
                                   const xdvne::SubstrateNetwork& net) {
  if (e.node_map.size() != vnr.nodes.size()) return "node_map size";
  if (e.link_map.size() != vnr.links.size()) return "link_map size";
  std::set<xdvne::NodeId> hosts(e.node_map.begin(), e.node_map.end());
  if (hosts.size() != e.node_map.size()) return "placement not injective";
  for (std::size_t v = 0; v < vnr.nodes.size(); ++v) {
    if (vnr.nodes[v].cpu_demand > net.node(e.node_map[v]).cpu_residual) return "cpu exceeded";
    if (e.node_cpu[v] != vnr.nodes[v].cpu_demand) return "node_cpu mismatch";
  }
  std::vector<long long> bw(net.link_count(), 0);
  for (std::size_t l = 0; l < vnr.links.size(); ++l) {
    const auto& vl = vnr.links[l];
    int carried = 0;
    for (const auto& share : e.link_map[l].paths) {
      const auto visited = walk(net, share.links, e.node_map[vl.a], e.node_map[vl.b]);
      if (!visited) return "path " + std::to_string(l) + " not contiguous";
      std::set<xdvne::NodeId> distinct(visited->begin(), visited->end());
      if (distinct.size() != visited->size()) return "path " + std::to_string(l) + " has a cycle";
      for (auto id : share.links) bw[id] += share.bandwidth;
      carried += share.bandwidth;
    }
    if (carried != vl.bw_demand) return "shares do not sum to demand";
  }
  for (const auto& l : net.links()) {
    if (bw[l.id] > l.bw_residual) return "bandwidth exceeded on link " + std::to_string(l.id);
  }
  return {};
}

}  // namespace oracle
