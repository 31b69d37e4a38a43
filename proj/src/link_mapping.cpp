#include <algorithm>

#include "xdvne/embedder.hpp"

namespace xdvne {

int BandwidthLedger::used(LinkId id) const {
  const auto it = std::lower_bound(used_.begin(), used_.end(), id,
                                   [](const std::pair<LinkId, int>& e, LinkId key) { return e.first < key; });
  return it != used_.end() && it->first == id ? it->second : 0;
}

void BandwidthLedger::hold(const PathShare& share) {
  for (LinkId id : share.links) {
    auto it = std::lower_bound(used_.begin(), used_.end(), id,
                               [](const std::pair<LinkId, int>& e, LinkId key) { return e.first < key; });
    if (it == used_.end() || it->first != id) it = used_.insert(it, {id, 0});
    it->second += share.bandwidth;
  }
}

void BandwidthLedger::hold(const LinkMapping& mapping) {
  for (const auto& share : mapping.paths) hold(share);
}

namespace {

std::optional<LinkMapping> split_route(const VirtualLink& vl, NodeId src, NodeId dst,
                                       const SubstrateNetwork& net, const BandwidthLedger& ledger,
                                       const LinkFilter& scope) {
  auto capacity = [&](const PhysicalLink& l) { return ledger.available(net, l.id); };
  const auto first = widest_path(net, src, dst, capacity, scope);
  if (!first) return std::nullopt;
  if (first->bottleneck >= vl.bw_demand) {
    return LinkMapping{{PathShare{first->links, vl.bw_demand}}};
  }
  const int first_share = first->bottleneck;
  BandwidthLedger after = ledger;
  after.hold(PathShare{first->links, first_share});
  auto remaining = [&](const PhysicalLink& l) { return after.available(net, l.id); };
  const auto second = widest_path(net, src, dst, remaining, scope);
  const int rest = vl.bw_demand - first_share;
  if (!second || second->bottleneck < rest) return std::nullopt;
  return LinkMapping{{PathShare{first->links, first_share}, PathShare{second->links, rest}}};
}

}  // namespace

std::optional<LinkMapping> route_across_domains(const VirtualLink& vl, NodeId src, NodeId dst,
                                                const SubstrateNetwork& net, const EmbedConfig& cfg,
                                                const BandwidthLedger& ledger) {
  if (src == dst) return std::nullopt;
  const auto path = least_delay_path(
      net, src, dst, [&](const PhysicalLink& l) { return ledger.available(net, l.id) >= vl.bw_demand; });
  if (path) return LinkMapping{{PathShare{*path, vl.bw_demand}}};
  if (!cfg.splitting) return std::nullopt;
  return split_route(vl, src, dst, net, ledger, [](const PhysicalLink&) { return true; });
}

std::optional<LinkMapping> route_virtual_link(const VirtualLink& vl, NodeId src, NodeId dst,
                                              const SubstrateNetwork& net, const DomainPaths& paths,
                                              const EmbedConfig& cfg, const BandwidthLedger& ledger) {
  if (src == dst) return std::nullopt;
  const DomainId domain = net.node(src).domain;
  if (domain != net.node(dst).domain) return route_across_domains(vl, src, dst, net, cfg, ledger);
  const auto route = paths.route_links(src, dst);
  if (!route.empty() && std::all_of(route.begin(), route.end(),
                                    [&](LinkId id) { return ledger.available(net, id) >= vl.bw_demand; })) {
    return LinkMapping{{PathShare{{route.begin(), route.end()}, vl.bw_demand}}};
  }
  if (!cfg.splitting) return std::nullopt;
  return split_route(vl, src, dst, net, ledger, [&](const PhysicalLink& l) {
    return l.kind == LinkKind::kIntra && net.node(l.a).domain == domain;
  });
}

std::optional<std::map<int, LinkMapping>> map_inter_domain(const VirtualNetworkRequest& vnr,
                                                           std::span<const int> cut_links,
                                                           std::span<const NodeId> node_map,
                                                           const SubstrateNetwork& net,
                                                           const EmbedConfig& cfg, BandwidthLedger& ledger) {
  std::vector<int> order(cut_links.begin(), cut_links.end());
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int bx = vnr.links[x].bw_demand;
    const int by = vnr.links[y].bw_demand;
    return bx != by ? bx > by : x < y;
  });
  BandwidthLedger trial = ledger;
  std::map<int, LinkMapping> result;
  for (int l : order) {
    const auto& vl = vnr.links[l];
    const NodeId src = node_map[vl.a];
    const NodeId dst = node_map[vl.b];
    auto routed = route_across_domains(vl, src, dst, net, cfg, trial);
    if (!routed) return std::nullopt;
    trial.hold(*routed);
    result[l] = std::move(*routed);
  }
  ledger = std::move(trial);
  return result;
}

std::optional<std::vector<LinkMapping>> route_all_links(const VirtualNetworkRequest& vnr,
                                                        std::span<const NodeId> node_map,
                                                        const SubstrateNetwork& net, const DomainPaths& paths,
                                                        const EmbedConfig& cfg) {
  std::vector<int> order(vnr.links.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const int bx = vnr.links[x].bw_demand;
    const int by = vnr.links[y].bw_demand;
    return bx != by ? bx > by : x < y;
  });
  BandwidthLedger ledger;
  std::vector<LinkMapping> result(vnr.links.size());
  for (int l : order) {
    const auto& vl = vnr.links[l];
    auto routed = route_virtual_link(vl, node_map[vl.a], node_map[vl.b], net, paths, cfg, ledger);
    if (!routed) return std::nullopt;
    ledger.hold(*routed);
    result[l] = std::move(*routed);
  }
  return result;
}

}  // namespace xdvne
