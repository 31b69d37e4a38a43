#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "xdvne/net_model.hpp"

namespace xdvne {

inline constexpr std::int64_t kUnreachable = std::numeric_limits<std::int64_t>::max();

struct WeightedEdge {
  int u = 0;
  int v = 0;
  std::int64_t weight = 0;
};

// All-pairs least-weight distances with next-hop reconstruction over an
// undirected graph of vertices 0..size()-1.
class PathTable {
 public:
  explicit PathTable(int size = 0);

  int size() const { return size_; }
  std::int64_t distance(int from, int to) const { return dist_[index(from, to)]; }
  bool reachable(int from, int to) const { return distance(from, to) != kUnreachable; }
  // Vertex sequence from -> to; {from} when from == to, empty if unreachable.
  std::vector<int> path(int from, int to) const;

 private:
  friend PathTable all_pairs_shortest_paths(int, std::span<const WeightedEdge>);

  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * size_ + to;
  }

  int size_ = 0;
  std::vector<std::int64_t> dist_;
  std::vector<int> next_;
};

// Floyd-Warshall. Weights must be non-negative.
PathTable all_pairs_shortest_paths(int vertex_count, std::span<const WeightedEdge> edges);

// Per-domain least-delay tables over intra-domain links. Depends only on
// topology and delays, so one instance serves a whole simulation run.
class DomainPaths {
 public:
  explicit DomainPaths(const SubstrateNetwork& net);

  const PathTable& table(DomainId d) const { return tables_.at(d); }
  // Both endpoints must lie in the same domain.
  std::int64_t distance(NodeId a, NodeId b) const;
  // Link ids along the least-delay intra-domain route; empty when a == b,
  // nullopt when unreachable or in different domains.
  std::optional<std::vector<LinkId>> route(NodeId a, NodeId b) const;
  // Same route without copying; empty when a == b, unreachable or in
  // different domains.
  std::span<const LinkId> route_links(NodeId a, NodeId b) const;

 private:
  std::vector<PathTable> tables_;
  std::vector<DomainId> domain_of_;
  std::vector<int> local_index_;
  std::vector<std::vector<NodeId>> members_;
  // Per domain, local_size x local_size link ids (-1 where absent).
  std::vector<std::vector<LinkId>> link_matrix_;
  // Per domain, local_size x local_size precomputed routes.
  std::vector<std::vector<std::vector<LinkId>>> routes_;
};

using LinkFilter = std::function<bool(const PhysicalLink&)>;

// Dijkstra over the full substrate on link delay, restricted to admissible
// links. Ties broken towards lower node ids. Empty vector when src == dst.
std::optional<std::vector<LinkId>> least_delay_path(const SubstrateNetwork& net, NodeId src,
                                                    NodeId dst, const LinkFilter& admissible);

// Maximum-bottleneck path under a per-link capacity function; ties broken
// by delay. Returns the links and the bottleneck.
struct WidestPath {
  std::vector<LinkId> links;
  int bottleneck = 0;
};
std::optional<WidestPath> widest_path(const SubstrateNetwork& net, NodeId src, NodeId dst,
                                      const std::function<int(const PhysicalLink&)>& capacity,
                                      const LinkFilter& admissible);

// Sum of link delays.
std::int64_t path_delay(const SubstrateNetwork& net, std::span<const LinkId> path);

// True if the links form a walk from src to dst.
bool is_contiguous(const SubstrateNetwork& net, std::span<const LinkId> path, NodeId src, NodeId dst);

}  // namespace xdvne
