#pragma once

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "xdvne/embedder.hpp"
#include "xdvne/net_model.hpp"

namespace xdvne {

using Json = nlohmann::json;

// Substrate document:
//   {"format": "xdvne-substrate", "version": 1, "domain_count": D,
//    "nodes": [{"id", "domain", "cpu_capacity", "cpu_residual", "cpu_price",
//               "delay", "is_border"}],
//    "links": [{"id", "a", "b", "bw_capacity", "bw_residual", "bw_price",
//               "delay", "kind": "intra" | "inter"}]}
// Ids must be dense and in order. Loading rebuilds adjacency, recomputes
// kind and border flags and rejects any mismatch with the stored values.
Json substrate_to_json(const SubstrateNetwork& net);
SubstrateNetwork substrate_from_json(const Json& doc);

// {"id", "arrival_time", "lifetime", "nodes": [{"id", "cpu_demand"}],
//  "links": [{"id", "a", "b", "bw_demand"}]}
Json vnr_to_json(const VirtualNetworkRequest& vnr);
VirtualNetworkRequest vnr_from_json(const Json& doc);

// {"vnr_id", "status", "reason", "node_map": [physical ids],
//  "link_map": [[{"links": [link ids], "bandwidth"}]],
//  "metrics": {"objective", "cost", "delay"}}
Json embedding_to_json(const Embedding& emb);
Embedding embedding_from_json(const Json& doc);

// Config objects use exactly the struct field names; ranges are [min, max]
// arrays. Unknown keys throw ConfigError. Missing keys keep defaults.
Json to_json(const SubstrateConfig& cfg);
Json to_json(const VnrConfig& cfg);
SubstrateConfig substrate_config_from_json(const Json& doc);
VnrConfig vnr_config_from_json(const Json& doc);

// Throws ConfigError naming the first key of `doc` not in `allowed`.
void reject_unknown_keys(const Json& doc, std::initializer_list<std::string_view> allowed,
                         std::string_view context);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace xdvne
