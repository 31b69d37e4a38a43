#include "xdvne/net_model.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <utility>

#include "xdvne/rng.hpp"

namespace xdvne {

namespace {

constexpr std::uint64_t kSubstrateStream = 0x5B;
constexpr std::uint64_t kVnrStream = 0x7A;

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<int> parent_;
};

void check_range(const IntRange& r, int floor, const char* name) {
  if (r.min > r.max) throw ConfigError(std::string(name) + ": min exceeds max");
  if (r.min < floor) {
    throw ConfigError(std::string(name) + ": values must be >= " + std::to_string(floor));
  }
}

void check_probability(double p, const char* name) {
  if (!(p > 0.0 && p <= 1.0)) throw ConfigError(std::string(name) + ": must lie in (0, 1]");
}

}  // namespace

SubstrateNetwork::SubstrateNetwork(int domain_count) {
  if (domain_count < 1) throw std::invalid_argument("substrate needs at least one domain");
  domain_nodes_.resize(domain_count);
}

std::vector<DomainId> SubstrateNetwork::domains() const {
  std::vector<DomainId> ids(domain_nodes_.size());
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

NodeId SubstrateNetwork::add_node(DomainId domain, int cpu_capacity, int cpu_price, int delay) {
  if (domain < 0 || domain >= domain_count()) throw std::invalid_argument("unknown domain");
  if (cpu_capacity <= 0 || cpu_price <= 0 || delay < 0) {
    throw std::invalid_argument("node needs cpu_capacity > 0, cpu_price > 0, delay >= 0");
  }
  const NodeId id = node_count();
  nodes_.push_back(PhysicalNode{id, domain, cpu_capacity, cpu_capacity, cpu_price, delay, false});
  adjacency_.emplace_back();
  domain_nodes_[domain].push_back(id);
  return id;
}

LinkId SubstrateNetwork::add_link(NodeId a, NodeId b, int bw_capacity, int bw_price, int delay) {
  if (a < 0 || b < 0 || a >= node_count() || b >= node_count()) {
    throw std::invalid_argument("link endpoint out of range");
  }
  if (a == b) throw std::invalid_argument("self-loop");
  if (find_link(a, b)) throw std::invalid_argument("duplicate link");
  if (bw_capacity <= 0 || bw_price <= 0 || delay < 0) {
    throw std::invalid_argument("link needs bw_capacity > 0, bw_price > 0, delay >= 0");
  }
  const LinkId id = link_count();
  const bool inter = nodes_[a].domain != nodes_[b].domain;
  links_.push_back(PhysicalLink{id, a, b, bw_capacity, bw_capacity, bw_price, delay,
                                inter ? LinkKind::kInter : LinkKind::kIntra});
  adjacency_[a].push_back(id);
  adjacency_[b].push_back(id);
  if (inter) {
    nodes_[a].is_border = true;
    nodes_[b].is_border = true;
  }
  return id;
}

std::optional<LinkId> SubstrateNetwork::find_link(NodeId a, NodeId b) const {
  const auto& smaller = adjacency_.at(a).size() <= adjacency_.at(b).size() ? adjacency_[a] : adjacency_[b];
  for (LinkId id : smaller) {
    const auto& l = links_[id];
    if ((l.a == a && l.b == b) || (l.a == b && l.b == a)) return id;
  }
  return std::nullopt;
}

void SubstrateNetwork::reserve_cpu(NodeId id, int amount) {
  auto& n = nodes_.at(id);
  if (amount < 0 || amount > n.cpu_residual) {
    throw std::logic_error("cpu reservation exceeds residual on node " + std::to_string(id));
  }
  n.cpu_residual -= amount;
}

void SubstrateNetwork::restore_cpu(NodeId id, int amount) {
  auto& n = nodes_.at(id);
  if (amount < 0 || n.cpu_residual + amount > n.cpu_capacity) {
    throw std::logic_error("cpu release exceeds capacity on node " + std::to_string(id));
  }
  n.cpu_residual += amount;
}

void SubstrateNetwork::reserve_bw(LinkId id, int amount) {
  auto& l = links_.at(id);
  if (amount < 0 || amount > l.bw_residual) {
    throw std::logic_error("bandwidth reservation exceeds residual on link " + std::to_string(id));
  }
  l.bw_residual -= amount;
}

void SubstrateNetwork::restore_bw(LinkId id, int amount) {
  auto& l = links_.at(id);
  if (amount < 0 || l.bw_residual + amount > l.bw_capacity) {
    throw std::logic_error("bandwidth release exceeds capacity on link " + std::to_string(id));
  }
  l.bw_residual += amount;
}

void SubstrateNetwork::add_holder(int vnr_id) {
  if (!holders_.insert(vnr_id).second) {
    throw std::logic_error("request " + std::to_string(vnr_id) + " already holds resources");
  }
}

void SubstrateNetwork::remove_holder(int vnr_id) {
  if (holders_.erase(vnr_id) == 0) {
    throw std::logic_error("request " + std::to_string(vnr_id) + " holds no resources");
  }
}

ResidualSnapshot SubstrateNetwork::snapshot() const {
  ResidualSnapshot s;
  s.cpu.reserve(nodes_.size());
  s.bw.reserve(links_.size());
  for (const auto& n : nodes_) s.cpu.push_back(n.cpu_residual);
  for (const auto& l : links_) s.bw.push_back(l.bw_residual);
  return s;
}

void SubstrateNetwork::reset_residuals() {
  for (auto& n : nodes_) n.cpu_residual = n.cpu_capacity;
  for (auto& l : links_) l.bw_residual = l.bw_capacity;
  holders_.clear();
}

std::vector<std::string> SubstrateNetwork::validate() const {
  std::vector<std::string> problems;
  for (const auto& n : nodes_) {
    if (n.cpu_capacity <= 0 || n.cpu_price <= 0 || n.delay < 0) {
      problems.push_back("node " + std::to_string(n.id) + ": bad attributes");
    }
    if (n.cpu_residual < 0 || n.cpu_residual > n.cpu_capacity) {
      problems.push_back("node " + std::to_string(n.id) + ": residual outside [0, capacity]");
    }
  }
  std::vector<bool> border(nodes_.size(), false);
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const auto& l : links_) {
    const std::string tag = "link " + std::to_string(l.id);
    if (l.a == l.b) problems.push_back(tag + ": self-loop");
    if (!pairs.insert(std::minmax(l.a, l.b)).second) problems.push_back(tag + ": duplicate pair");
    if (l.bw_capacity <= 0 || l.bw_price <= 0 || l.delay < 0) problems.push_back(tag + ": bad attributes");
    if (l.bw_residual < 0 || l.bw_residual > l.bw_capacity) {
      problems.push_back(tag + ": residual outside [0, capacity]");
    }
    const bool inter = nodes_[l.a].domain != nodes_[l.b].domain;
    if (inter != (l.kind == LinkKind::kInter)) problems.push_back(tag + ": kind disagrees with domains");
    if (inter) border[l.a] = border[l.b] = true;
  }
  for (const auto& n : nodes_) {
    if (n.is_border != border[n.id]) problems.push_back("node " + std::to_string(n.id) + ": border flag");
  }

  DisjointSets intra(node_count());
  DisjointSets inter(domain_count());
  for (const auto& l : links_) {
    if (l.kind == LinkKind::kIntra) {
      intra.unite(l.a, l.b);
    } else {
      inter.unite(nodes_[l.a].domain, nodes_[l.b].domain);
    }
  }
  for (DomainId d = 0; d < domain_count(); ++d) {
    const auto& members = domain_nodes_[d];
    if (members.empty()) {
      problems.push_back("domain " + std::to_string(d) + ": empty");
      continue;
    }
    const int root = intra.find(members.front());
    for (NodeId n : members) {
      if (intra.find(n) != root) {
        problems.push_back("domain " + std::to_string(d) + ": not connected");
        break;
      }
    }
    if (inter.find(d) != inter.find(0)) {
      problems.push_back("domain " + std::to_string(d) + ": unreachable over inter-domain links");
    }
  }
  return problems;
}

int VirtualNetworkRequest::total_cpu() const {
  int total = 0;
  for (const auto& n : nodes) total += n.cpu_demand;
  return total;
}

std::vector<std::string> VirtualNetworkRequest::validate() const {
  std::vector<std::string> problems;
  if (nodes.empty()) problems.push_back("request has no virtual nodes");
  if (!(lifetime > 0.0)) problems.push_back("lifetime must be > 0");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].id != static_cast<int>(i)) problems.push_back("virtual node ids must be dense");
    if (nodes[i].cpu_demand <= 0) problems.push_back("virtual node " + std::to_string(i) + ": demand <= 0");
  }
  DisjointSets sets(node_count());
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < links.size(); ++i) {
    const auto& l = links[i];
    const std::string tag = "virtual link " + std::to_string(i);
    if (l.id != static_cast<int>(i)) problems.push_back("virtual link ids must be dense");
    if (l.bw_demand <= 0) problems.push_back(tag + ": demand <= 0");
    if (l.a < 0 || l.b < 0 || l.a >= node_count() || l.b >= node_count()) {
      problems.push_back(tag + ": endpoint out of range");
      continue;
    }
    if (l.a == l.b) problems.push_back(tag + ": endpoints equal");
    if (!pairs.insert(std::minmax(l.a, l.b)).second) problems.push_back(tag + ": duplicate pair");
    sets.unite(l.a, l.b);
  }
  for (int i = 1; i < node_count(); ++i) {
    if (sets.find(i) != sets.find(0)) {
      problems.push_back("virtual graph is not connected");
      break;
    }
  }
  return problems;
}

void SubstrateConfig::validate() const {
  if (domain_count < 1) throw ConfigError("domain_count must be >= 1");
  if (nodes_per_domain < 1) throw ConfigError("nodes_per_domain must be >= 1");
  check_range(cpu_range, 1, "cpu_range");
  check_range(node_delay_range, 0, "node_delay_range");
  check_range(cpu_price_range, 1, "cpu_price_range");
  check_range(bw_range, 1, "bw_range");
  check_range(link_delay_range, 0, "link_delay_range");
  check_range(bw_price_range, 1, "bw_price_range");
  check_probability(intra_link_probability, "intra_link_probability");
  if (inter_links_per_domain_pair < 1) throw ConfigError("inter_links_per_domain_pair must be >= 1");
  if (border_nodes_per_domain < 1) throw ConfigError("border_nodes_per_domain must be >= 1");
}

void VnrConfig::validate() const {
  check_range(node_count_range, 2, "node_count_range");
  check_range(cpu_demand_range, 1, "cpu_demand_range");
  check_range(bw_demand_range, 1, "bw_demand_range");
  check_probability(virtual_link_probability, "virtual_link_probability");
  if (!(arrival_rate > 0.0)) throw ConfigError("arrival_rate must be > 0");
  if (!(mean_lifetime > 0.0)) throw ConfigError("mean_lifetime must be > 0");
}

SubstrateNetwork generate_substrate(const SubstrateConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Rng rng(mix_seed(seed, kSubstrateStream));
  SubstrateNetwork net(cfg.domain_count);

  for (DomainId d = 0; d < cfg.domain_count; ++d) {
    for (int i = 0; i < cfg.nodes_per_domain; ++i) {
      const int cpu = rng.uniform_int(cfg.cpu_range.min, cfg.cpu_range.max);
      const int price = rng.uniform_int(cfg.cpu_price_range.min, cfg.cpu_price_range.max);
      const int delay = rng.uniform_int(cfg.node_delay_range.min, cfg.node_delay_range.max);
      net.add_node(d, cpu, price, delay);
    }
  }

  auto draw_link = [&](NodeId a, NodeId b) {
    const int bw = rng.uniform_int(cfg.bw_range.min, cfg.bw_range.max);
    const int price = rng.uniform_int(cfg.bw_price_range.min, cfg.bw_price_range.max);
    const int delay = rng.uniform_int(cfg.link_delay_range.min, cfg.link_delay_range.max);
    net.add_link(a, b, bw, price, delay);
  };

  // Erdos-Renyi per domain, then bridge leftover components to the first.
  for (DomainId d = 0; d < cfg.domain_count; ++d) {
    const std::vector<NodeId> members(net.domain_nodes(d).begin(), net.domain_nodes(d).end());
    const int n = static_cast<int>(members.size());
    DisjointSets sets(n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (rng.bernoulli(cfg.intra_link_probability)) {
          draw_link(members[i], members[j]);
          sets.unite(i, j);
        }
      }
    }
    std::vector<int> connected;
    std::vector<int> pending;
    for (int i = 0; i < n; ++i) {
      (sets.find(i) == sets.find(0) ? connected : pending).push_back(i);
    }
    while (!pending.empty()) {
      const int root = sets.find(pending.front());
      std::vector<int> component;
      std::vector<int> rest;
      for (int i : pending) (sets.find(i) == root ? component : rest).push_back(i);
      const int from = component[rng.uniform_int(0, static_cast<int>(component.size()) - 1)];
      const int to = connected[rng.uniform_int(0, static_cast<int>(connected.size()) - 1)];
      draw_link(members[from], members[to]);
      sets.unite(from, to);
      connected.insert(connected.end(), component.begin(), component.end());
      pending = std::move(rest);
    }
  }

  if (cfg.domain_count > 1) {
    std::vector<std::vector<NodeId>> pools(cfg.domain_count);
    for (DomainId d = 0; d < cfg.domain_count; ++d) {
      std::vector<NodeId> members(net.domain_nodes(d).begin(), net.domain_nodes(d).end());
      rng.shuffle(std::span<NodeId>(members));
      members.resize(std::min<std::size_t>(members.size(), cfg.border_nodes_per_domain));
      std::sort(members.begin(), members.end());
      pools[d] = std::move(members);
    }
    for (DomainId a = 0; a < cfg.domain_count; ++a) {
      for (DomainId b = a + 1; b < cfg.domain_count; ++b) {
        std::vector<std::pair<NodeId, NodeId>> options;
        for (NodeId x : pools[a]) {
          for (NodeId y : pools[b]) options.emplace_back(x, y);
        }
        rng.shuffle(std::span<std::pair<NodeId, NodeId>>(options));
        const auto count = std::min<std::size_t>(options.size(), cfg.inter_links_per_domain_pair);
        std::sort(options.begin(), options.begin() + count);
        for (std::size_t i = 0; i < count; ++i) draw_link(options[i].first, options[i].second);
      }
    }
  }
  return net;
}

VirtualNetworkRequest generate_vnr(const VnrConfig& cfg, std::uint64_t seed, int id,
                                   double arrival_time) {
  cfg.validate();
  Rng rng(mix_seed(mix_seed(seed, kVnrStream), static_cast<std::uint64_t>(id)));
  VirtualNetworkRequest vnr;
  vnr.id = id;
  vnr.arrival_time = arrival_time;

  const int n = rng.uniform_int(cfg.node_count_range.min, cfg.node_count_range.max);
  for (int i = 0; i < n; ++i) {
    vnr.nodes.push_back(VirtualNode{i, rng.uniform_int(cfg.cpu_demand_range.min, cfg.cpu_demand_range.max)});
  }

  // Random recursive tree over a shuffled labelling, then extra edges.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<int>(order));
  std::vector<std::vector<bool>> adjacent(n, std::vector<bool>(n, false));
  for (int i = 1; i < n; ++i) {
    const int parent = order[rng.uniform_int(0, i - 1)];
    adjacent[order[i]][parent] = adjacent[parent][order[i]] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!adjacent[i][j] && rng.bernoulli(cfg.virtual_link_probability)) {
        adjacent[i][j] = adjacent[j][i] = true;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!adjacent[i][j]) continue;
      const int bw = rng.uniform_int(cfg.bw_demand_range.min, cfg.bw_demand_range.max);
      vnr.links.push_back(VirtualLink{static_cast<int>(vnr.links.size()), i, j, bw});
    }
  }
  vnr.lifetime = rng.exponential(cfg.mean_lifetime);
  return vnr;
}

}  // namespace xdvne
