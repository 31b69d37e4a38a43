#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "xdvne/net_model.hpp"
#include "xdvne/paths.hpp"

namespace xdvne {

// Weights applied to the price-weighted resource terms and the delay terms
// of the embedding objective.
struct ObjectiveWeights {
  double price = 1.0;
  double delay = 1.0;

  bool operator==(const ObjectiveWeights&) const = default;
};

struct EmbedConfig {
  ObjectiveWeights weights;
  // Candidates kept per virtual node.
  int k = 2;
  // Allow a virtual link to be carried by two physical paths.
  bool splitting = false;
  // Candidate combinations tried per domain before giving up.
  int backtrack_limit = 64;
  // Among the combinations tried, keep the feasible one with the lowest
  // objective; when false, the first feasible combination wins.
  bool best_combination = true;
  // Partition search is exhaustive while domains^nodes stays within this.
  std::uint64_t exhaustive_partition_limit = 4096;
  // Baseline knobs.
  std::uint64_t seed = 0;
  int local_search_iterations = 50;
};

enum class EmbedStatus { kAccepted, kRejected };

enum class RejectReason {
  kNone,
  kInvalidRequest,
  kNoCandidates,
  kIntraDomainMapping,
  kInterDomainMapping,
};

std::string_view to_string(RejectReason reason);

// One physical path carrying `bandwidth` units of a virtual link.
struct PathShare {
  std::vector<LinkId> links;
  int bandwidth = 0;

  bool operator==(const PathShare&) const = default;
};

// Mapping of one virtual link: a single path unless splitting was used.
struct LinkMapping {
  std::vector<PathShare> paths;

  int hop_count() const;
  bool operator==(const LinkMapping&) const = default;
};

struct Embedding {
  int vnr_id = -1;
  EmbedStatus status = EmbedStatus::kRejected;
  RejectReason reason = RejectReason::kNone;
  // Indexed by virtual node id.
  std::vector<NodeId> node_map;
  std::vector<int> node_cpu;
  // Indexed by virtual link id.
  std::vector<LinkMapping> link_map;
  double objective = 0.0;
  double cost = 0.0;
  double delay = 0.0;

  bool accepted() const { return status == EmbedStatus::kAccepted; }
  static Embedding rejected(int vnr_id, RejectReason reason);
  bool operator==(const Embedding&) const = default;
};

struct Candidate {
  NodeId node = -1;
  double cost = 0.0;

  bool operator==(const Candidate&) const = default;
};

// Ordered candidates per virtual node; an empty list marks a virtual node
// with no feasible unmarked physical node.
struct CandidateSet {
  std::map<int, std::vector<Candidate>> by_virtual_node;

  bool complete() const;
  const std::vector<Candidate>& of(int virtual_node) const { return by_virtual_node.at(virtual_node); }
};

// Virtual nodes assigned to one domain and the virtual links between them.
struct VnrSubgraph {
  DomainId domain = 0;
  std::vector<int> virtual_nodes;
  std::vector<int> virtual_links;
};

struct Partition {
  // Domain per virtual node.
  std::vector<DomainId> assignment;
  // One entry per domain hosting at least one virtual node, ascending.
  std::vector<VnrSubgraph> subgraphs;
  // Virtual links whose endpoints sit in different domains.
  std::vector<int> cut_links;
  double estimate = 0.0;
  bool exhaustive = false;
};

// Placement and link mappings produced by one local controller.
struct DomainMapping {
  std::map<int, NodeId> nodes;
  std::map<int, LinkMapping> links;
};

// Tentative bandwidth held by the request being embedded; never touches the
// substrate.
class BandwidthLedger {
 public:
  int used(LinkId id) const;
  int available(const SubstrateNetwork& net, LinkId id) const {
    return net.link(id).bw_residual - used(id);
  }
  void hold(const PathShare& share);
  void hold(const LinkMapping& mapping);

 private:
  // Sorted by link id.
  std::vector<std::pair<LinkId, int>> used_;
};

// Candidate-domain and CPU check for placing vn on pn.
bool check_node_feasible(const VirtualNode& vn, const PhysicalNode& pn,
                         std::span<const DomainId> candidate_domains);

// Every hop has residual bandwidth >= the virtual link's demand.
bool check_link_feasible(const VirtualLink& vl, const SubstrateNetwork& net,
                         std::span<const LinkId> path);

// Shares sum to the demand and the per-link total of the shares fits the
// residual. Only meaningful when splitting is enabled.
bool check_split_feasible(const VirtualLink& vl, const SubstrateNetwork& net,
                          std::span<const PathShare> shares);

double node_mapping_cost(const VirtualNode& vn, const PhysicalNode& pn, const ObjectiveWeights& w);

// Price-weighted bandwidth plus delay of one link carrying `bandwidth`.
double link_hop_cost(int bandwidth, const PhysicalLink& pl, const ObjectiveWeights& w);

// Virtual nodes in local-controller processing order: descending CPU demand,
// then ascending id.
std::vector<int> processing_order(const VirtualNetworkRequest& vnr, std::span<const int> virtual_nodes);

// Candidate node selection for one domain's subgraph. `exclude` holds
// physical nodes already marked by an earlier pass.
CandidateSet select_candidates(const VirtualNetworkRequest& vnr, const VnrSubgraph& subgraph,
                               const SubstrateNetwork& net, int k, const ObjectiveWeights& w,
                               std::span<const NodeId> exclude = {});

// Estimated objective of a domain assignment; nullopt when some virtual node
// has no candidate under it.
std::optional<double> estimate_assignment(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                                          std::span<const DomainId> assignment, const EmbedConfig& cfg);

// Global-controller split of a request into per-domain subgraphs.
std::optional<Partition> partition_vnr(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                                       const EmbedConfig& cfg);

// Builds the subgraphs and cut links for a given assignment.
Partition make_partition(const VirtualNetworkRequest& vnr, std::span<const DomainId> assignment);

// Local-controller mapping of one subgraph. Least-delay routes come from
// `paths`; feasibility accounts for bandwidth already held in `ledger`, which
// is extended on success.
std::optional<DomainMapping> map_intra_domain(const VirtualNetworkRequest& vnr, const VnrSubgraph& subgraph,
                                              const CandidateSet& candidates, const SubstrateNetwork& net,
                                              const DomainPaths& paths, const EmbedConfig& cfg,
                                              BandwidthLedger& ledger);

// Global-controller stitching of cut links over the full substrate.
std::optional<std::map<int, LinkMapping>> map_inter_domain(const VirtualNetworkRequest& vnr,
                                                           std::span<const int> cut_links,
                                                           std::span<const NodeId> node_map,
                                                           const SubstrateNetwork& net,
                                                           const EmbedConfig& cfg, BandwidthLedger& ledger);

// Route one virtual link between fixed endpoints. Same-domain endpoints use
// the domain's least-delay route; otherwise a least-delay path over links
// with enough bandwidth. With splitting enabled a failed single path falls
// back to a two-path split.
std::optional<LinkMapping> route_virtual_link(const VirtualLink& vl, NodeId src, NodeId dst,
                                              const SubstrateNetwork& net, const DomainPaths& paths,
                                              const EmbedConfig& cfg, const BandwidthLedger& ledger);

// Least-delay path over the full substrate restricted to links with enough
// bandwidth, with the same split fallback.
std::optional<LinkMapping> route_across_domains(const VirtualLink& vl, NodeId src, NodeId dst,
                                                const SubstrateNetwork& net, const EmbedConfig& cfg,
                                                const BandwidthLedger& ledger);

// Routes every virtual link for a complete placement, in descending
// bandwidth order. Shared by the baselines.
std::optional<std::vector<LinkMapping>> route_all_links(const VirtualNetworkRequest& vnr,
                                                        std::span<const NodeId> node_map,
                                                        const SubstrateNetwork& net, const DomainPaths& paths,
                                                        const EmbedConfig& cfg);

// Fills in accepted status and the three metrics.
Embedding assemble_embedding(const VirtualNetworkRequest& vnr, std::vector<NodeId> node_map,
                             std::vector<LinkMapping> link_map, const SubstrateNetwork& net,
                             const ObjectiveWeights& w);

// Full pipeline. Pure: the substrate is only read.
Embedding embed(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net, const EmbedConfig& cfg);
Embedding embed(const VirtualNetworkRequest& vnr, const SubstrateNetwork& net, const DomainPaths& paths,
                const EmbedConfig& cfg);

// Metric evaluation. Each throws std::logic_error on a rejected embedding.
double objective_value(const Embedding& emb, const SubstrateNetwork& net, const ObjectiveWeights& w);
double embedding_cost(const Embedding& emb);
double embedding_delay(const Embedding& emb, const SubstrateNetwork& net);

}  // namespace xdvne
