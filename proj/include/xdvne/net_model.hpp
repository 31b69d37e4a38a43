#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xdvne {

using NodeId = int;
using LinkId = int;
using DomainId = int;

// Invalid configuration file, flag or generator parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntRange {
  int min = 0;
  int max = 0;

  bool contains(int v) const { return v >= min && v <= max; }
  bool operator==(const IntRange&) const = default;
};

struct PhysicalNode {
  NodeId id = 0;
  DomainId domain = 0;
  int cpu_capacity = 0;
  int cpu_residual = 0;
  int cpu_price = 0;
  int delay = 0;
  bool is_border = false;

  bool operator==(const PhysicalNode&) const = default;
};

enum class LinkKind { kIntra, kInter };

struct PhysicalLink {
  LinkId id = 0;
  NodeId a = 0;
  NodeId b = 0;
  int bw_capacity = 0;
  int bw_residual = 0;
  int bw_price = 0;
  int delay = 0;
  LinkKind kind = LinkKind::kIntra;

  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool operator==(const PhysicalLink&) const = default;
};

// Residual CPU per node and bandwidth per link, indexed by id.
struct ResidualSnapshot {
  std::vector<int> cpu;
  std::vector<int> bw;

  bool operator==(const ResidualSnapshot&) const = default;
};

// Multi-domain substrate. Node and link ids are dense indices assigned in
// insertion order. Topology is fixed once built; only residuals change.
class SubstrateNetwork {
 public:
  explicit SubstrateNetwork(int domain_count = 1);

  NodeId add_node(DomainId domain, int cpu_capacity, int cpu_price, int delay);
  // Link kind is derived from the endpoint domains. Inter-domain links mark
  // both endpoints as border nodes.
  LinkId add_link(NodeId a, NodeId b, int bw_capacity, int bw_price, int delay);

  int domain_count() const { return static_cast<int>(domain_nodes_.size()); }
  std::vector<DomainId> domains() const;
  std::span<const NodeId> domain_nodes(DomainId d) const { return domain_nodes_.at(d); }

  std::span<const PhysicalNode> nodes() const { return nodes_; }
  std::span<const PhysicalLink> links() const { return links_; }
  const PhysicalNode& node(NodeId id) const { return nodes_.at(id); }
  const PhysicalLink& link(LinkId id) const { return links_.at(id); }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }
  std::span<const LinkId> incident(NodeId id) const { return adjacency_.at(id); }
  std::optional<LinkId> find_link(NodeId a, NodeId b) const;

  // Residual mutation. Each throws std::logic_error instead of leaving a
  // residual outside [0, capacity].
  void reserve_cpu(NodeId id, int amount);
  void restore_cpu(NodeId id, int amount);
  void reserve_bw(LinkId id, int amount);
  void restore_bw(LinkId id, int amount);

  // Ids of requests whose resources are currently held.
  bool holds(int vnr_id) const { return holders_.contains(vnr_id); }
  void add_holder(int vnr_id);
  void remove_holder(int vnr_id);
  const std::set<int>& holders() const { return holders_; }

  ResidualSnapshot snapshot() const;
  void reset_residuals();

  // Checks every structural invariant; returns one message per violation.
  std::vector<std::string> validate() const;

  bool operator==(const SubstrateNetwork& other) const {
    return nodes_ == other.nodes_ && links_ == other.links_ &&
           domain_nodes_ == other.domain_nodes_;
  }

 private:
  std::vector<PhysicalNode> nodes_;
  std::vector<PhysicalLink> links_;
  std::vector<std::vector<LinkId>> adjacency_;
  std::vector<std::vector<NodeId>> domain_nodes_;
  std::set<int> holders_;
};

struct VirtualNode {
  int id = 0;
  int cpu_demand = 0;

  bool operator==(const VirtualNode&) const = default;
};

struct VirtualLink {
  int id = 0;
  int a = 0;
  int b = 0;
  int bw_demand = 0;

  int other(int n) const { return n == a ? b : a; }
  bool operator==(const VirtualLink&) const = default;
};

// Virtual node and link ids equal their positions in the vectors.
struct VirtualNetworkRequest {
  int id = 0;
  std::vector<VirtualNode> nodes;
  std::vector<VirtualLink> links;
  double arrival_time = 0.0;
  double lifetime = 1.0;

  int node_count() const { return static_cast<int>(nodes.size()); }
  int total_cpu() const;
  std::vector<std::string> validate() const;

  bool operator==(const VirtualNetworkRequest&) const = default;
};

struct SubstrateConfig {
  int domain_count = 4;
  int nodes_per_domain = 30;
  IntRange cpu_range{100, 300};
  IntRange node_delay_range{1, 10};
  IntRange cpu_price_range{1, 10};
  IntRange bw_range{1000, 3000};
  IntRange link_delay_range{1, 10};
  IntRange bw_price_range{1, 10};
  double intra_link_probability = 0.3;
  int inter_links_per_domain_pair = 2;
  int border_nodes_per_domain = 3;

  // Throws ConfigError.
  void validate() const;
  bool operator==(const SubstrateConfig&) const = default;
};

struct VnrConfig {
  IntRange node_count_range{2, 6};
  IntRange cpu_demand_range{1, 10};
  IntRange bw_demand_range{5, 15};
  double virtual_link_probability = 0.5;
  // Poisson arrivals per time unit (4 per 100 units).
  double arrival_rate = 0.04;
  double mean_lifetime = 500.0;

  void validate() const;
  bool operator==(const VnrConfig&) const = default;
};

SubstrateNetwork generate_substrate(const SubstrateConfig& cfg, std::uint64_t seed);

VirtualNetworkRequest generate_vnr(const VnrConfig& cfg, std::uint64_t seed, int id,
                                   double arrival_time);

}  // namespace xdvne
