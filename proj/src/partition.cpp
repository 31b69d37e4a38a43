#include <algorithm>
#include <cmath>
#include <queue>

#include "xdvne/embedder.hpp"

namespace xdvne {

namespace {

constexpr double kTieTolerance = 1e-9;

// Inputs to the estimate that depend only on the request and the substrate,
// computed once per partition search.
struct EstimateContext {
  // ranked[v][d]: feasible nodes of domain d for virtual node v, ascending
  // by (cost, id).
  std::vector<std::vector<std::vector<Candidate>>> ranked;
  std::vector<int> order;
  // Weighted average link price and delay; one hop carrying b units is
  // estimated at b * per_bw_unit + per_hop_delay.
  double per_bw_unit = 0.0;
  double per_hop_delay = 0.0;
  // Minimum number of inter-domain links between two domains.
  std::vector<std::vector<int>> domain_hops;
};

EstimateContext make_context(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                             const ObjectiveWeights& w) {
  EstimateContext ctx;
  const int domains = net.domain_count();
  ctx.ranked.assign(vnr.node_count(), std::vector<std::vector<Candidate>>(domains));
  for (int v = 0; v < vnr.node_count(); ++v) {
    const auto& vn = vnr.nodes[v];
    for (DomainId d = 0; d < domains; ++d) {
      auto& list = ctx.ranked[v][d];
      for (NodeId id : net.domain_nodes(d)) {
        const auto& pn = net.node(id);
        if (vn.cpu_demand <= pn.cpu_residual) list.push_back(Candidate{id, node_mapping_cost(vn, pn, w)});
      }
      std::sort(list.begin(), list.end(), [](const Candidate& x, const Candidate& y) {
        return x.cost != y.cost ? x.cost < y.cost : x.node < y.node;
      });
    }
  }
  std::vector<int> all(vnr.node_count());
  for (int v = 0; v < vnr.node_count(); ++v) all[v] = v;
  ctx.order = processing_order(vnr, all);

  double price = 0.0;
  double delay = 0.0;
  for (const auto& l : net.links()) {
    price += l.bw_price;
    delay += l.delay;
  }
  if (net.link_count() > 0) {
    price /= net.link_count();
    delay /= net.link_count();
  }
  ctx.per_bw_unit = w.price * price;
  ctx.per_hop_delay = w.delay * delay;

  std::vector<std::vector<DomainId>> neighbours(domains);
  for (const auto& l : net.links()) {
    if (l.kind != LinkKind::kInter) continue;
    neighbours[net.node(l.a).domain].push_back(net.node(l.b).domain);
    neighbours[net.node(l.b).domain].push_back(net.node(l.a).domain);
  }
  ctx.domain_hops.assign(domains, std::vector<int>(domains, -1));
  for (DomainId s = 0; s < domains; ++s) {
    auto& hops = ctx.domain_hops[s];
    std::queue<DomainId> frontier;
    hops[s] = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const DomainId at = frontier.front();
      frontier.pop();
      for (DomainId to : neighbours[at]) {
        if (hops[to] < 0) {
          hops[to] = hops[at] + 1;
          frontier.push(to);
        }
      }
    }
  }
  return ctx;
}

// Same marking rule as select_candidates, run against the precomputed lists.
std::optional<double> node_estimate(const EstimateContext& ctx, std::span<const DomainId> assignment, int k,
                                    std::vector<NodeId>& marked) {
  marked.clear();
  double total = 0.0;
  for (int v : ctx.order) {
    int taken = 0;
    for (const auto& c : ctx.ranked[v][assignment[v]]) {
      if (taken == k) break;
      if (std::find(marked.begin(), marked.end(), c.node) != marked.end()) continue;
      if (taken == 0) total += c.cost;
      marked.push_back(c.node);
      ++taken;
    }
    if (taken == 0) return std::nullopt;
  }
  return total;
}

std::optional<double> link_estimate(const EstimateContext& ctx, const VirtualNetworkRequest& vnr,
                                    std::span<const DomainId> assignment) {
  double total = 0.0;
  for (const auto& l : vnr.links) {
    const DomainId da = assignment[l.a];
    const DomainId db = assignment[l.b];
    int hops = 1;
    if (da != db) {
      const int between = ctx.domain_hops[da][db];
      if (between < 0) return std::nullopt;
      // Intra-domain segment on each side of the inter-domain hops.
      hops = between + 2;
    }
    total += hops * (l.bw_demand * ctx.per_bw_unit + ctx.per_hop_delay);
  }
  return total;
}

std::optional<double> score(const EstimateContext& ctx, const VirtualNetworkRequest& vnr,
                            std::span<const DomainId> assignment, int k, std::vector<NodeId>& marked) {
  const auto nodes = node_estimate(ctx, assignment, k, marked);
  if (!nodes) return std::nullopt;
  const auto links = link_estimate(ctx, vnr, assignment);
  if (!links) return std::nullopt;
  return *nodes + *links;
}

// Greedy fallback for large requests: each virtual node, in processing
// order, goes to the domain minimising its own node cost plus the link
// estimate towards neighbours already placed.
std::vector<DomainId> greedy_assignment(const EstimateContext& ctx, const VirtualNetworkRequest& vnr,
                                        int domains, int k) {
  std::vector<DomainId> assignment(vnr.node_count(), -1);
  std::vector<NodeId> marked;
  for (int v : ctx.order) {
    double best = INFINITY;
    DomainId best_domain = -1;
    std::vector<NodeId> best_marks;
    for (DomainId d = 0; d < domains; ++d) {
      std::vector<NodeId> marks;
      double node_cost = INFINITY;
      int taken = 0;
      for (const auto& c : ctx.ranked[v][d]) {
        if (taken == k) break;
        if (std::find(marked.begin(), marked.end(), c.node) != marked.end()) continue;
        if (taken == 0) node_cost = c.cost;
        marks.push_back(c.node);
        ++taken;
      }
      if (taken == 0) continue;
      double link_cost = 0.0;
      for (const auto& l : vnr.links) {
        if (l.a != v && l.b != v) continue;
        const DomainId other = assignment[l.other(v)];
        if (other < 0) continue;
        const int between = other == d ? -1 : ctx.domain_hops[d][other];
        if (other != d && between < 0) {
          link_cost = INFINITY;
          break;
        }
        const int hops = other == d ? 1 : between + 2;
        link_cost += hops * (l.bw_demand * ctx.per_bw_unit + ctx.per_hop_delay);
      }
      if (node_cost + link_cost < best - kTieTolerance) {
        best = node_cost + link_cost;
        best_domain = d;
        best_marks = std::move(marks);
      }
    }
    if (best_domain < 0) return {};
    assignment[v] = best_domain;
    marked.insert(marked.end(), best_marks.begin(), best_marks.end());
  }
  return assignment;
}

}  // namespace

std::optional<double> estimate_assignment(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                                          std::span<const DomainId> assignment, const EmbedConfig& cfg) {
  const auto ctx = make_context(vnr, net, cfg.weights);
  std::vector<NodeId> marked;
  return score(ctx, vnr, assignment, cfg.k, marked);
}

std::optional<Partition> partition_vnr(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                                       const EmbedConfig& cfg) {
  const int n = vnr.node_count();
  const int domains = net.domain_count();
  if (n == 0) return std::nullopt;
  const auto ctx = make_context(vnr, net, cfg.weights);

  // A virtual node infeasible in every domain has no candidate domain.
  for (int v = 0; v < n; ++v) {
    const bool any = std::any_of(ctx.ranked[v].begin(), ctx.ranked[v].end(),
                                 [](const auto& list) { return !list.empty(); });
    if (!any) return std::nullopt;
  }

  std::uint64_t space = 1;
  bool exhaustive = true;
  for (int v = 0; v < n && exhaustive; ++v) {
    space *= static_cast<std::uint64_t>(domains);
    exhaustive = space <= cfg.exhaustive_partition_limit;
  }

  std::vector<NodeId> marked;
  std::vector<DomainId> best;
  double best_score = INFINITY;
  if (exhaustive) {
    // Odometer over assignment vectors, virtual node 0 most significant;
    // the first vector reaching the minimum wins ties.
    std::vector<DomainId> assignment(n, 0);
    while (true) {
      const auto s = score(ctx, vnr, assignment, cfg.k, marked);
      if (s && *s < best_score - kTieTolerance) {
        best_score = *s;
        best = assignment;
      }
      int pos = n - 1;
      while (pos >= 0 && ++assignment[pos] == domains) assignment[pos--] = 0;
      if (pos < 0) break;
    }
  } else {
    best = greedy_assignment(ctx, vnr, domains, cfg.k);
    if (!best.empty()) {
      const auto s = score(ctx, vnr, best, cfg.k, marked);
      if (s) {
        best_score = *s;
      } else {
        best.clear();
      }
    }
  }
  if (best.empty()) return std::nullopt;
  Partition p = make_partition(vnr, best);
  p.estimate = best_score;
  p.exhaustive = exhaustive;
  return p;
}

}  // namespace xdvne
