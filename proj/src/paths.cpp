#include "xdvne/paths.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace xdvne {

PathTable::PathTable(int size)
    : size_(size),
      dist_(static_cast<std::size_t>(size) * size, kUnreachable),
      next_(static_cast<std::size_t>(size) * size, -1) {
  for (int i = 0; i < size; ++i) {
    dist_[index(i, i)] = 0;
    next_[index(i, i)] = i;
  }
}

std::vector<int> PathTable::path(int from, int to) const {
  if (!reachable(from, to)) return {};
  std::vector<int> vertices{from};
  int at = from;
  while (at != to) {
    at = next_[index(at, to)];
    vertices.push_back(at);
  }
  return vertices;
}

PathTable all_pairs_shortest_paths(int vertex_count, std::span<const WeightedEdge> edges) {
  PathTable table(vertex_count);
  const int n = vertex_count;
  for (const auto& e : edges) {
    if (e.weight < 0) throw std::invalid_argument("negative edge weight");
    if (e.u == e.v) continue;
    for (auto [from, to] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
      const auto at = table.index(from, to);
      if (e.weight < table.dist_[at]) {
        table.dist_[at] = e.weight;
        table.next_[at] = to;
      }
    }
  }
  auto& dist = table.dist_;
  auto& next = table.next_;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const std::int64_t ik = dist[table.index(i, k)];
      if (ik == kUnreachable) continue;
      for (int j = 0; j < n; ++j) {
        const std::int64_t kj = dist[table.index(k, j)];
        if (kj == kUnreachable) continue;
        const auto ij = table.index(i, j);
        if (ik + kj < dist[ij]) {
          dist[ij] = ik + kj;
          next[ij] = next[table.index(i, k)];
        }
      }
    }
  }
  return table;
}

DomainPaths::DomainPaths(const SubstrateNetwork& net)
    : domain_of_(net.node_count()), local_index_(net.node_count()) {
  const int domains = net.domain_count();
  members_.resize(domains);
  link_matrix_.resize(domains);
  for (DomainId d = 0; d < domains; ++d) {
    const auto members = net.domain_nodes(d);
    members_[d].assign(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      domain_of_[members[i]] = d;
      local_index_[members[i]] = static_cast<int>(i);
    }
    link_matrix_[d].assign(members.size() * members.size(), -1);
  }
  std::vector<std::vector<WeightedEdge>> edges(domains);
  for (const auto& l : net.links()) {
    if (l.kind != LinkKind::kIntra) continue;
    const DomainId d = domain_of_[l.a];
    const int u = local_index_[l.a];
    const int v = local_index_[l.b];
    const auto size = members_[d].size();
    link_matrix_[d][u * size + v] = l.id;
    link_matrix_[d][v * size + u] = l.id;
    edges[d].push_back(WeightedEdge{u, v, l.delay});
  }
  tables_.reserve(domains);
  routes_.resize(domains);
  for (DomainId d = 0; d < domains; ++d) {
    const int size = static_cast<int>(members_[d].size());
    tables_.push_back(all_pairs_shortest_paths(size, edges[d]));
    routes_[d].resize(static_cast<std::size_t>(size) * size);
    for (int u = 0; u < size; ++u) {
      for (int v = 0; v < size; ++v) {
        const auto vertices = tables_[d].path(u, v);
        auto& links = routes_[d][static_cast<std::size_t>(u) * size + v];
        for (std::size_t i = 1; i < vertices.size(); ++i) {
          links.push_back(link_matrix_[d][vertices[i - 1] * size + vertices[i]]);
        }
      }
    }
  }
}

std::int64_t DomainPaths::distance(NodeId a, NodeId b) const {
  if (domain_of_.at(a) != domain_of_.at(b)) return kUnreachable;
  return tables_[domain_of_[a]].distance(local_index_[a], local_index_[b]);
}

std::optional<std::vector<LinkId>> DomainPaths::route(NodeId a, NodeId b) const {
  const DomainId d = domain_of_.at(a);
  if (d != domain_of_.at(b) || !tables_[d].reachable(local_index_[a], local_index_[b])) return std::nullopt;
  const auto links = route_links(a, b);
  return std::vector<LinkId>(links.begin(), links.end());
}

std::span<const LinkId> DomainPaths::route_links(NodeId a, NodeId b) const {
  const DomainId d = domain_of_.at(a);
  if (d != domain_of_.at(b)) return {};
  return routes_[d][static_cast<std::size_t>(local_index_[a]) * members_[d].size() + local_index_[b]];
}

namespace {

std::vector<LinkId> unwind(const SubstrateNetwork& net, const std::vector<LinkId>& via, NodeId src,
                           NodeId dst) {
  std::vector<LinkId> links;
  for (NodeId at = dst; at != src;) {
    const LinkId l = via[at];
    links.push_back(l);
    at = net.link(l).other(at);
  }
  std::reverse(links.begin(), links.end());
  return links;
}

}  // namespace

std::optional<std::vector<LinkId>> least_delay_path(const SubstrateNetwork& net, NodeId src,
                                                    NodeId dst, const LinkFilter& admissible) {
  if (src == dst) return std::vector<LinkId>{};
  const int n = net.node_count();
  std::vector<std::int64_t> dist(n, kUnreachable);
  std::vector<LinkId> via(n, -1);
  using Entry = std::pair<std::int64_t, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  dist[src] = 0;
  frontier.emplace(0, src);
  while (!frontier.empty()) {
    const auto [d, at] = frontier.top();
    frontier.pop();
    if (d != dist[at]) continue;
    if (at == dst) break;
    for (LinkId id : net.incident(at)) {
      const auto& l = net.link(id);
      if (!admissible(l)) continue;
      const NodeId to = l.other(at);
      const std::int64_t candidate = d + l.delay;
      if (candidate < dist[to]) {
        dist[to] = candidate;
        via[to] = id;
        frontier.emplace(candidate, to);
      }
    }
  }
  if (dist[dst] == kUnreachable) return std::nullopt;
  return unwind(net, via, src, dst);
}

std::optional<WidestPath> widest_path(const SubstrateNetwork& net, NodeId src, NodeId dst,
                                      const std::function<int(const PhysicalLink&)>& capacity,
                                      const LinkFilter& admissible) {
  if (src == dst) return std::nullopt;
  const int n = net.node_count();
  std::vector<int> width(n, -1);
  std::vector<std::int64_t> delay(n, kUnreachable);
  std::vector<LinkId> via(n, -1);
  std::vector<bool> done(n, false);
  // Max width first, then least delay, then lowest id.
  using Entry = std::tuple<int, std::int64_t, NodeId>;
  auto worse = [](const Entry& x, const Entry& y) {
    if (std::get<0>(x) != std::get<0>(y)) return std::get<0>(x) < std::get<0>(y);
    if (std::get<1>(x) != std::get<1>(y)) return std::get<1>(x) > std::get<1>(y);
    return std::get<2>(x) > std::get<2>(y);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> frontier(worse);
  width[src] = std::numeric_limits<int>::max();
  delay[src] = 0;
  frontier.emplace(width[src], 0, src);
  while (!frontier.empty()) {
    const auto [w, d, at] = frontier.top();
    frontier.pop();
    if (done[at]) continue;
    done[at] = true;
    if (at == dst) break;
    for (LinkId id : net.incident(at)) {
      const auto& l = net.link(id);
      if (!admissible(l)) continue;
      const int cap = capacity(l);
      if (cap <= 0) continue;
      const NodeId to = l.other(at);
      if (done[to]) continue;
      const int cw = std::min(w, cap);
      const std::int64_t cd = d + l.delay;
      if (cw > width[to] || (cw == width[to] && cd < delay[to])) {
        width[to] = cw;
        delay[to] = cd;
        via[to] = id;
        frontier.emplace(cw, cd, to);
      }
    }
  }
  if (width[dst] <= 0) return std::nullopt;
  return WidestPath{unwind(net, via, src, dst), width[dst]};
}

std::int64_t path_delay(const SubstrateNetwork& net, std::span<const LinkId> path) {
  std::int64_t total = 0;
  for (LinkId id : path) total += net.link(id).delay;
  return total;
}

bool is_contiguous(const SubstrateNetwork& net, std::span<const LinkId> path, NodeId src, NodeId dst) {
  NodeId at = src;
  for (LinkId id : path) {
    if (id < 0 || id >= net.link_count()) return false;
    const auto& l = net.link(id);
    if (l.a != at && l.b != at) return false;
    at = l.other(at);
  }
  return at == dst;
}

}  // namespace xdvne
