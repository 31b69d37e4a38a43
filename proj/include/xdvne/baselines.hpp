#pragma once

#include <vector>

#include "xdvne/embedder.hpp"

namespace xdvne {

// Simplified comparison algorithms. Each reuses the embedder's feasibility,
// routing and metric code and differs only in how nodes are chosen.

// Hop distance from every node to the nearest border node of its own
// domain over intra-domain links; -1 when the domain has no border node.
std::vector<int> border_hop_distances(const SubstrateNetwork& net);

// Feasible hosts for vn across all domains ranked by border-hop distance
// ascending, then residual CPU descending, then id.
std::vector<NodeId> rank_by_border_distance(const VirtualNode& vn, const SubstrateNetwork& net,
                                            const std::vector<int>& border_hops);

// "PSO-VNE (simplified)": border-distance candidate lists plus a seeded
// local search over single-node candidate exchanges minimising the
// objective. Candidate lists hold k * (virtual node count) entries.
Embedding embed_boundary_hops(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                              const EmbedConfig& cfg);
Embedding embed_boundary_hops(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                              const DomainPaths& paths, const EmbedConfig& cfg);

// "MC-VNE (simplified)": Kruskal admission of bandwidth-feasible substrate
// links by weight bw_price * demand + delay until one tree component can
// host the request; virtual nodes are then placed on that tree and virtual
// links follow tree paths. Greedy, no backtracking.
Embedding embed_link_first(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                           const EmbedConfig& cfg);

}  // namespace xdvne
