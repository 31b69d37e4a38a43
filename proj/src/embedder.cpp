#include "xdvne/embedder.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace xdvne {

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone: return "none";
    case RejectReason::kInvalidRequest: return "invalid_request";
    case RejectReason::kNoCandidates: return "no_candidates";
    case RejectReason::kIntraDomainMapping: return "intra_domain_mapping";
    case RejectReason::kInterDomainMapping: return "inter_domain_mapping";
  }
  return "unknown";
}

int LinkMapping::hop_count() const {
  int hops = 0;
  for (const auto& p : paths) hops += static_cast<int>(p.links.size());
  return hops;
}

Embedding Embedding::rejected(int vnr_id, RejectReason reason) {
  Embedding e;
  e.vnr_id = vnr_id;
  e.status = EmbedStatus::kRejected;
  e.reason = reason;
  return e;
}

bool CandidateSet::complete() const {
  return std::none_of(by_virtual_node.begin(), by_virtual_node.end(),
                      [](const auto& entry) { return entry.second.empty(); });
}

bool check_node_feasible(const VirtualNode& vn, const PhysicalNode& pn,
                         std::span<const DomainId> candidate_domains) {
  const bool in_domain =
      std::find(candidate_domains.begin(), candidate_domains.end(), pn.domain) != candidate_domains.end();
  return in_domain && vn.cpu_demand <= pn.cpu_residual;
}

bool check_link_feasible(const VirtualLink& vl, const SubstrateNetwork& net, std::span<const LinkId> path) {
  return std::all_of(path.begin(), path.end(),
                     [&](LinkId id) { return net.link(id).bw_residual >= vl.bw_demand; });
}

bool check_split_feasible(const VirtualLink& vl, const SubstrateNetwork& net,
                          std::span<const PathShare> shares) {
  if (shares.empty()) return false;
  int total = 0;
  std::map<LinkId, int> load;
  for (const auto& s : shares) {
    if (s.bandwidth <= 0 || s.links.empty()) return false;
    total += s.bandwidth;
    for (LinkId id : s.links) load[id] += s.bandwidth;
  }
  if (total != vl.bw_demand) return false;
  return std::all_of(load.begin(), load.end(),
                     [&](const auto& entry) { return entry.second <= net.link(entry.first).bw_residual; });
}

double node_mapping_cost(const VirtualNode& vn, const PhysicalNode& pn, const ObjectiveWeights& w) {
  return w.price * (static_cast<double>(vn.cpu_demand) * pn.cpu_price) + w.delay * pn.delay;
}

double link_hop_cost(int bandwidth, const PhysicalLink& pl, const ObjectiveWeights& w) {
  return w.price * (static_cast<double>(bandwidth) * pl.bw_price) + w.delay * pl.delay;
}

std::vector<int> processing_order(const VirtualNetworkRequest& vnr, std::span<const int> virtual_nodes) {
  std::vector<int> order(virtual_nodes.begin(), virtual_nodes.end());
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int dx = vnr.nodes[x].cpu_demand;
    const int dy = vnr.nodes[y].cpu_demand;
    return dx != dy ? dx > dy : x < y;
  });
  return order;
}

CandidateSet select_candidates(const VirtualNetworkRequest& vnr, const VnrSubgraph& subgraph,
                               const SubstrateNetwork& net, int k, const ObjectiveWeights& w,
                               std::span<const NodeId> exclude) {
  std::set<NodeId> marked(exclude.begin(), exclude.end());
  const DomainId domains[] = {subgraph.domain};
  CandidateSet result;
  for (int v : processing_order(vnr, subgraph.virtual_nodes)) {
    const auto& vn = vnr.nodes[v];
    std::vector<Candidate> ranked;
    for (NodeId id : net.domain_nodes(subgraph.domain)) {
      const auto& pn = net.node(id);
      if (marked.contains(id) || !check_node_feasible(vn, pn, domains)) continue;
      ranked.push_back(Candidate{id, node_mapping_cost(vn, pn, w)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Candidate& x, const Candidate& y) {
      return x.cost != y.cost ? x.cost < y.cost : x.node < y.node;
    });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
    for (const auto& c : ranked) marked.insert(c.node);
    result.by_virtual_node[v] = std::move(ranked);
  }
  return result;
}

Partition make_partition(const VirtualNetworkRequest& vnr, std::span<const DomainId> assignment) {
  Partition p;
  p.assignment.assign(assignment.begin(), assignment.end());
  std::map<DomainId, VnrSubgraph> by_domain;
  for (int v = 0; v < vnr.node_count(); ++v) {
    auto& sub = by_domain[assignment[v]];
    sub.domain = assignment[v];
    sub.virtual_nodes.push_back(v);
  }
  for (const auto& l : vnr.links) {
    if (assignment[l.a] == assignment[l.b]) {
      by_domain[assignment[l.a]].virtual_links.push_back(l.id);
    } else {
      p.cut_links.push_back(l.id);
    }
  }
  for (auto& [d, sub] : by_domain) p.subgraphs.push_back(std::move(sub));
  return p;
}

namespace {

struct Combination {
  double cost;
  std::vector<int> index;
  std::size_t pivot;
};

struct CombinationOrder {
  bool operator()(const Combination& x, const Combination& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    return x.index > y.index;
  }
};

std::vector<int> links_by_demand(const VirtualNetworkRequest& vnr, std::span<const int> links) {
  std::vector<int> order(links.begin(), links.end());
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int bx = vnr.links[x].bw_demand;
    const int by = vnr.links[y].bw_demand;
    return bx != by ? bx > by : x < y;
  });
  return order;
}

}  // namespace

std::optional<DomainMapping> map_intra_domain(const VirtualNetworkRequest& vnr, const VnrSubgraph& subgraph,
                                              const CandidateSet& candidates, const SubstrateNetwork& net,
                                              const DomainPaths& paths, const EmbedConfig& cfg,
                                              BandwidthLedger& ledger) {
  const auto order = processing_order(vnr, subgraph.virtual_nodes);
  std::vector<const std::vector<Candidate>*> lists;
  for (int v : order) {
    const auto& list = candidates.of(v);
    if (list.empty()) return std::nullopt;
    lists.push_back(&list);
  }
  const auto links = links_by_demand(vnr, subgraph.virtual_links);

  // Candidate combinations in ascending total node cost; each index vector
  // is generated once by only advancing positions at or after its pivot.
  std::priority_queue<Combination, std::vector<Combination>, CombinationOrder> frontier;
  {
    double base = 0.0;
    for (const auto* list : lists) base += list->front().cost;
    frontier.push(Combination{base, std::vector<int>(order.size(), 0), 0});
  }
  // Every intra-subgraph link costs at least one hop at the domain's lowest
  // price and delay, which bounds what the remaining combinations can reach.
  double link_floor = 0.0;
  const bool can_prune = cfg.weights.price >= 0.0 && cfg.weights.delay >= 0.0;
  if (can_prune && !links.empty()) {
    int min_price = std::numeric_limits<int>::max();
    int min_delay = std::numeric_limits<int>::max();
    for (const auto& pl : net.links()) {
      if (pl.kind != LinkKind::kIntra || net.node(pl.a).domain != subgraph.domain) continue;
      min_price = std::min(min_price, pl.bw_price);
      min_delay = std::min(min_delay, pl.delay);
    }
    if (min_price == std::numeric_limits<int>::max()) return std::nullopt;
    for (int l : links) {
      link_floor += cfg.weights.price * (static_cast<double>(vnr.links[l].bw_demand) * min_price) +
                    cfg.weights.delay * min_delay;
    }
  }

  // Maps one combination onto `out`, holding its bandwidth in `held`, and
  // returns the link part of the objective.
  auto route_combination = [&](const std::vector<NodeId>& placement, BandwidthLedger& held,
                               DomainMapping& out) -> std::optional<double> {
    double value = 0.0;
    for (int l : links) {
      const auto& vl = vnr.links[l];
      auto routed = route_virtual_link(vl, placement[vl.a], placement[vl.b], net, paths, cfg, held);
      if (!routed) return std::nullopt;
      held.hold(*routed);
      for (const auto& share : routed->paths) {
        for (LinkId id : share.links) value += link_hop_cost(share.bandwidth, net.link(id), cfg.weights);
      }
      out.links[l] = std::move(*routed);
    }
    return value;
  };

  // Without splitting every route is fixed by its endpoints, so a trial only
  // needs per-link bandwidth counters; the mapping itself is built once for
  // the winner.
  std::vector<int> extra;
  std::vector<LinkId> touched;
  auto price_fixed_routes = [&](const std::vector<NodeId>& placement) -> std::optional<double> {
    if (extra.empty()) extra.assign(net.link_count(), 0);
    double value = 0.0;
    bool ok = true;
    touched.clear();
    for (int l : links) {
      const auto& vl = vnr.links[l];
      const auto route = paths.route_links(placement[vl.a], placement[vl.b]);
      ok = !route.empty() && std::all_of(route.begin(), route.end(), [&](LinkId id) {
        return ledger.available(net, id) - extra[id] >= vl.bw_demand;
      });
      if (!ok) break;
      for (LinkId id : route) {
        if (extra[id] == 0) touched.push_back(id);
        extra[id] += vl.bw_demand;
        value += link_hop_cost(vl.bw_demand, net.link(id), cfg.weights);
      }
    }
    for (LinkId id : touched) extra[id] = 0;
    if (!ok) return std::nullopt;
    return value;
  };

  std::optional<std::vector<NodeId>> best;
  double best_value = 0.0;
  for (int attempt = 0; attempt < cfg.backtrack_limit && !frontier.empty(); ++attempt) {
    const Combination combo = frontier.top();
    frontier.pop();
    if (best && can_prune && combo.cost + link_floor >= best_value - 1e-9) break;
    for (std::size_t p = combo.pivot; p < combo.index.size(); ++p) {
      const auto& list = *lists[p];
      const int next = combo.index[p] + 1;
      if (next >= static_cast<int>(list.size())) continue;
      Combination succ{combo.cost - list[next - 1].cost + list[next].cost, combo.index, p};
      succ.index[p] = next;
      frontier.push(std::move(succ));
    }

    std::vector<NodeId> placement(vnr.node_count(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) placement[order[i]] = (*lists[i])[combo.index[i]].node;
    std::optional<double> link_value;
    if (cfg.splitting) {
      BandwidthLedger trial = ledger;
      DomainMapping scratch;
      link_value = route_combination(placement, trial, scratch);
    } else {
      link_value = price_fixed_routes(placement);
    }
    if (!link_value) continue;
    const double value = combo.cost + *link_value;
    if (!cfg.best_combination) {
      best = std::move(placement);
      break;
    }
    if (!best || value < best_value - 1e-9) {
      best = std::move(placement);
      best_value = value;
    }
  }
  if (!best) return std::nullopt;

  DomainMapping mapping;
  for (int v : order) mapping.nodes[v] = (*best)[v];
  BandwidthLedger trial = ledger;
  if (!route_combination(*best, trial, mapping)) throw std::logic_error("winning combination no longer routes");
  ledger = std::move(trial);
  return mapping;
}

Embedding assemble_embedding(const VirtualNetworkRequest& vnr, std::vector<NodeId> node_map,
                             std::vector<LinkMapping> link_map, const SubstrateNetwork& net,
                             const ObjectiveWeights& w) {
  Embedding e;
  e.vnr_id = vnr.id;
  e.status = EmbedStatus::kAccepted;
  e.node_map = std::move(node_map);
  e.node_cpu.reserve(vnr.nodes.size());
  for (const auto& n : vnr.nodes) e.node_cpu.push_back(n.cpu_demand);
  e.link_map = std::move(link_map);
  e.objective = objective_value(e, net, w);
  e.cost = embedding_cost(e);
  e.delay = embedding_delay(e, net);
  return e;
}

Embedding embed(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net, const EmbedConfig& cfg) {
  const DomainPaths paths(net);
  return embed(vnr, net, paths, cfg);
}

Embedding embed(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net, const DomainPaths& paths,
                const EmbedConfig& cfg) {
  if (!vnr.validate().empty()) return Embedding::rejected(vnr.id, RejectReason::kInvalidRequest);

  // Steps 1-3: partition and pre-map at the global controller.
  const auto partition = partition_vnr(vnr, net, cfg);
  if (!partition) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);

  std::vector<NodeId> node_map(vnr.node_count(), -1);
  std::vector<LinkMapping> link_map(vnr.links.size());
  BandwidthLedger ledger;

  // Step 4: each local controller selects candidates and maps its subgraph.
  for (const auto& sub : partition->subgraphs) {
    const auto candidates = select_candidates(vnr, sub, net, cfg.k, cfg.weights);
    if (!candidates.complete()) return Embedding::rejected(vnr.id, RejectReason::kNoCandidates);
    auto mapping = map_intra_domain(vnr, sub, candidates, net, paths, cfg, ledger);
    if (!mapping) return Embedding::rejected(vnr.id, RejectReason::kIntraDomainMapping);
    for (const auto& [v, n] : mapping->nodes) node_map[v] = n;
    for (auto& [l, m] : mapping->links) link_map[l] = std::move(m);
  }

  // Step 5: inter-domain stitching at the global controller.
  auto stitched = map_inter_domain(vnr, partition->cut_links, node_map, net, cfg, ledger);
  if (!stitched) return Embedding::rejected(vnr.id, RejectReason::kInterDomainMapping);
  for (auto& [l, m] : *stitched) link_map[l] = std::move(m);

  return assemble_embedding(vnr, std::move(node_map), std::move(link_map), net, cfg.weights);
}

namespace {

void require_accepted(const Embedding& emb, const char* what) {
  if (!emb.accepted()) throw std::logic_error(std::string(what) + " of a rejected embedding is undefined");
}

}  // namespace

double objective_value(const Embedding& emb, const SubstrateNetwork& net, const ObjectiveWeights& w) {
  require_accepted(emb, "objective");
  double total = 0.0;
  for (std::size_t v = 0; v < emb.node_map.size(); ++v) {
    const auto& pn = net.node(emb.node_map[v]);
    total += w.price * (static_cast<double>(emb.node_cpu[v]) * pn.cpu_price) + w.delay * pn.delay;
  }
  for (const auto& m : emb.link_map) {
    for (const auto& share : m.paths) {
      for (LinkId id : share.links) total += link_hop_cost(share.bandwidth, net.link(id), w);
    }
  }
  return total;
}

double embedding_cost(const Embedding& emb) {
  require_accepted(emb, "cost");
  double total = 0.0;
  for (int cpu : emb.node_cpu) total += cpu;
  for (const auto& m : emb.link_map) {
    for (const auto& share : m.paths) total += static_cast<double>(share.bandwidth) * share.links.size();
  }
  return total;
}

double embedding_delay(const Embedding& emb, const SubstrateNetwork& net) {
  require_accepted(emb, "delay");
  double total = 0.0;
  const std::set<NodeId> hosts(emb.node_map.begin(), emb.node_map.end());
  for (NodeId n : hosts) total += net.node(n).delay;
  for (const auto& m : emb.link_map) {
    for (const auto& share : m.paths) total += static_cast<double>(path_delay(net, share.links));
  }
  return total;
}

}  // namespace xdvne
