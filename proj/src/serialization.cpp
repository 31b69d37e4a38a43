#include "xdvne/serialization.hpp"

#include <fstream>
#include <stdexcept>

namespace xdvne {

namespace {

constexpr std::string_view kSubstrateFormat = "xdvne-substrate";

Json range_to_json(const IntRange& r) { return Json::array({r.min, r.max}); }

IntRange range_from_json(const Json& j, std::string_view key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw ConfigError(std::string(key) + ": expected [min, max] integer pair");
  }
  return IntRange{j[0].get<int>(), j[1].get<int>()};
}

template <typename T>
void read_field(const Json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    out = it->get<T>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

void read_range(const Json& doc, const char* key, IntRange& out) {
  const auto it = doc.find(key);
  if (it != doc.end()) out = range_from_json(*it, key);
}

}  // namespace

void reject_unknown_keys(const Json& doc, std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  if (!doc.is_object()) throw ConfigError(std::string(context) + ": expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(std::string(context) + ": unknown key '" + key + "'");
  }
}

Json substrate_to_json(const SubstrateNetwork& net) {
  Json nodes = Json::array();
  for (const auto& n : net.nodes()) {
    nodes.push_back({{"id", n.id},
                     {"domain", n.domain},
                     {"cpu_capacity", n.cpu_capacity},
                     {"cpu_residual", n.cpu_residual},
                     {"cpu_price", n.cpu_price},
                     {"delay", n.delay},
                     {"is_border", n.is_border}});
  }
  Json links = Json::array();
  for (const auto& l : net.links()) {
    links.push_back({{"id", l.id},
                     {"a", l.a},
                     {"b", l.b},
                     {"bw_capacity", l.bw_capacity},
                     {"bw_residual", l.bw_residual},
                     {"bw_price", l.bw_price},
                     {"delay", l.delay},
                     {"kind", l.kind == LinkKind::kInter ? "inter" : "intra"}});
  }
  return Json{{"format", kSubstrateFormat},
              {"version", 1},
              {"domain_count", net.domain_count()},
              {"nodes", std::move(nodes)},
              {"links", std::move(links)}};
}

SubstrateNetwork substrate_from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kSubstrateFormat || doc.at("version").get<int>() != 1) {
      throw std::invalid_argument("unsupported substrate format");
    }
    SubstrateNetwork net(doc.at("domain_count").get<int>());
    for (const auto& n : doc.at("nodes")) {
      const NodeId id = net.add_node(n.at("domain").get<int>(), n.at("cpu_capacity").get<int>(),
                                     n.at("cpu_price").get<int>(), n.at("delay").get<int>());
      if (id != n.at("id").get<int>()) throw std::invalid_argument("node ids must be dense and ordered");
    }
    for (const auto& l : doc.at("links")) {
      const LinkId id = net.add_link(l.at("a").get<int>(), l.at("b").get<int>(), l.at("bw_capacity").get<int>(),
                                     l.at("bw_price").get<int>(), l.at("delay").get<int>());
      if (id != l.at("id").get<int>()) throw std::invalid_argument("link ids must be dense and ordered");
      const auto kind = l.at("kind").get<std::string>();
      if (kind != (net.link(id).kind == LinkKind::kInter ? "inter" : "intra")) {
        throw std::invalid_argument("link " + std::to_string(id) + ": kind disagrees with endpoint domains");
      }
    }
    for (const auto& n : doc.at("nodes")) {
      const NodeId id = n.at("id").get<int>();
      if (n.at("is_border").get<bool>() != net.node(id).is_border) {
        throw std::invalid_argument("node " + std::to_string(id) + ": border flag disagrees with links");
      }
      net.reserve_cpu(id, net.node(id).cpu_capacity - n.at("cpu_residual").get<int>());
    }
    for (const auto& l : doc.at("links")) {
      const LinkId id = l.at("id").get<int>();
      net.reserve_bw(id, net.link(id).bw_capacity - l.at("bw_residual").get<int>());
    }
    return net;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed substrate document: ") + e.what());
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(std::string("invalid substrate document: ") + e.what());
  }
}

Json vnr_to_json(const VirtualNetworkRequest& vnr) {
  Json nodes = Json::array();
  for (const auto& n : vnr.nodes) nodes.push_back({{"id", n.id}, {"cpu_demand", n.cpu_demand}});
  Json links = Json::array();
  for (const auto& l : vnr.links) {
    links.push_back({{"id", l.id}, {"a", l.a}, {"b", l.b}, {"bw_demand", l.bw_demand}});
  }
  return Json{{"id", vnr.id},
              {"arrival_time", vnr.arrival_time},
              {"lifetime", vnr.lifetime},
              {"nodes", std::move(nodes)},
              {"links", std::move(links)}};
}

VirtualNetworkRequest vnr_from_json(const Json& doc) {
  try {
    VirtualNetworkRequest vnr;
    vnr.id = doc.at("id").get<int>();
    vnr.arrival_time = doc.at("arrival_time").get<double>();
    vnr.lifetime = doc.at("lifetime").get<double>();
    for (const auto& n : doc.at("nodes")) vnr.nodes.push_back({n.at("id").get<int>(), n.at("cpu_demand").get<int>()});
    for (const auto& l : doc.at("links")) {
      vnr.links.push_back({l.at("id").get<int>(), l.at("a").get<int>(), l.at("b").get<int>(),
                           l.at("bw_demand").get<int>()});
    }
    return vnr;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed request document: ") + e.what());
  }
}

Json embedding_to_json(const Embedding& emb) {
  Json link_map = Json::array();
  for (const auto& m : emb.link_map) {
    Json paths = Json::array();
    for (const auto& p : m.paths) paths.push_back({{"links", p.links}, {"bandwidth", p.bandwidth}});
    link_map.push_back(std::move(paths));
  }
  return Json{{"vnr_id", emb.vnr_id},
              {"status", emb.accepted() ? "accepted" : "rejected"},
              {"reason", to_string(emb.reason)},
              {"node_map", emb.node_map},
              {"node_cpu", emb.node_cpu},
              {"link_map", std::move(link_map)},
              {"metrics", {{"objective", emb.objective}, {"cost", emb.cost}, {"delay", emb.delay}}}};
}

Embedding embedding_from_json(const Json& doc) {
  try {
    Embedding emb;
    emb.vnr_id = doc.at("vnr_id").get<int>();
    emb.status = doc.at("status").get<std::string>() == "accepted" ? EmbedStatus::kAccepted : EmbedStatus::kRejected;
    const auto reason = doc.at("reason").get<std::string>();
    for (auto r : {RejectReason::kNone, RejectReason::kInvalidRequest, RejectReason::kNoCandidates,
                   RejectReason::kIntraDomainMapping, RejectReason::kInterDomainMapping}) {
      if (reason == to_string(r)) emb.reason = r;
    }
    emb.node_map = doc.at("node_map").get<std::vector<NodeId>>();
    emb.node_cpu = doc.at("node_cpu").get<std::vector<int>>();
    for (const auto& paths : doc.at("link_map")) {
      LinkMapping m;
      for (const auto& p : paths) {
        m.paths.push_back(PathShare{p.at("links").get<std::vector<LinkId>>(), p.at("bandwidth").get<int>()});
      }
      emb.link_map.push_back(std::move(m));
    }
    const auto& metrics = doc.at("metrics");
    emb.objective = metrics.at("objective").get<double>();
    emb.cost = metrics.at("cost").get<double>();
    emb.delay = metrics.at("delay").get<double>();
    return emb;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("malformed embedding document: ") + e.what());
  }
}

Json to_json(const SubstrateConfig& cfg) {
  return Json{{"domain_count", cfg.domain_count},
              {"nodes_per_domain", cfg.nodes_per_domain},
              {"cpu_range", range_to_json(cfg.cpu_range)},
              {"node_delay_range", range_to_json(cfg.node_delay_range)},
              {"cpu_price_range", range_to_json(cfg.cpu_price_range)},
              {"bw_range", range_to_json(cfg.bw_range)},
              {"link_delay_range", range_to_json(cfg.link_delay_range)},
              {"bw_price_range", range_to_json(cfg.bw_price_range)},
              {"intra_link_probability", cfg.intra_link_probability},
              {"inter_links_per_domain_pair", cfg.inter_links_per_domain_pair},
              {"border_nodes_per_domain", cfg.border_nodes_per_domain}};
}

Json to_json(const VnrConfig& cfg) {
  return Json{{"node_count_range", range_to_json(cfg.node_count_range)},
              {"cpu_demand_range", range_to_json(cfg.cpu_demand_range)},
              {"bw_demand_range", range_to_json(cfg.bw_demand_range)},
              {"virtual_link_probability", cfg.virtual_link_probability},
              {"arrival_rate", cfg.arrival_rate},
              {"mean_lifetime", cfg.mean_lifetime}};
}

SubstrateConfig substrate_config_from_json(const Json& doc) {
  reject_unknown_keys(doc,
                      {"domain_count", "nodes_per_domain", "cpu_range", "node_delay_range", "cpu_price_range",
                       "bw_range", "link_delay_range", "bw_price_range", "intra_link_probability",
                       "inter_links_per_domain_pair", "border_nodes_per_domain"},
                      "substrate");
  SubstrateConfig cfg;
  read_field(doc, "domain_count", cfg.domain_count);
  read_field(doc, "nodes_per_domain", cfg.nodes_per_domain);
  read_range(doc, "cpu_range", cfg.cpu_range);
  read_range(doc, "node_delay_range", cfg.node_delay_range);
  read_range(doc, "cpu_price_range", cfg.cpu_price_range);
  read_range(doc, "bw_range", cfg.bw_range);
  read_range(doc, "link_delay_range", cfg.link_delay_range);
  read_range(doc, "bw_price_range", cfg.bw_price_range);
  read_field(doc, "intra_link_probability", cfg.intra_link_probability);
  read_field(doc, "inter_links_per_domain_pair", cfg.inter_links_per_domain_pair);
  read_field(doc, "border_nodes_per_domain", cfg.border_nodes_per_domain);
  cfg.validate();
  return cfg;
}

VnrConfig vnr_config_from_json(const Json& doc) {
  reject_unknown_keys(doc,
                      {"node_count_range", "cpu_demand_range", "bw_demand_range", "virtual_link_probability",
                       "arrival_rate", "mean_lifetime"},
                      "vnr");
  VnrConfig cfg;
  read_range(doc, "node_count_range", cfg.node_count_range);
  read_range(doc, "cpu_demand_range", cfg.cpu_demand_range);
  read_range(doc, "bw_demand_range", cfg.bw_demand_range);
  read_field(doc, "virtual_link_probability", cfg.virtual_link_probability);
  read_field(doc, "arrival_rate", cfg.arrival_rate);
  read_field(doc, "mean_lifetime", cfg.mean_lifetime);
  cfg.validate();
  return cfg;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace xdvne
