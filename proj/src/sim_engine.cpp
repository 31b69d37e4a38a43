#include "xdvne/sim_engine.hpp"

#include <cstdio>
#include <queue>

#include "xdvne/baselines.hpp"
#include "xdvne/rng.hpp"

namespace xdvne {

namespace {

constexpr std::uint64_t kSubstrateSeedStream = 1;
constexpr std::uint64_t kVnrSeedStream = 2;
constexpr std::uint64_t kArrivalStream = 3;
constexpr std::uint64_t kAlgorithmStream = 4;

double utilisation_cpu(const SubstrateNetwork& net) {
  double used = 0.0;
  double total = 0.0;
  for (const auto& n : net.nodes()) {
    used += n.cpu_capacity - n.cpu_residual;
    total += n.cpu_capacity;
  }
  return total > 0.0 ? used / total : 0.0;
}

double utilisation_bw(const SubstrateNetwork& net) {
  double used = 0.0;
  double total = 0.0;
  for (const auto& l : net.links()) {
    used += l.bw_capacity - l.bw_residual;
    total += l.bw_capacity;
  }
  return total > 0.0 ? used / total : 0.0;
}

}  // namespace

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kMoo: return "moo";
    case Algorithm::kPso: return "pso";
    case Algorithm::kMc: return "mc";
  }
  return "unknown";
}

std::string_view algorithm_label(Algorithm a) {
  switch (a) {
    case Algorithm::kMoo: return "MOO-VNE";
    case Algorithm::kPso: return "PSO-VNE (simplified)";
    case Algorithm::kMc: return "MC-VNE (simplified)";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "moo") return Algorithm::kMoo;
  if (name == "pso") return Algorithm::kPso;
  if (name == "mc") return Algorithm::kMc;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected moo, pso or mc)");
}

Embedding run_algorithm(Algorithm a, const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                        const DomainPaths& paths, const EmbedConfig& cfg) {
  switch (a) {
    case Algorithm::kMoo: return embed(vnr, net, paths, cfg);
    case Algorithm::kPso: return embed_boundary_hops(vnr, net, paths, cfg);
    case Algorithm::kMc: return embed_link_first(vnr, net, cfg);
  }
  throw std::logic_error("unhandled algorithm");
}

void commit(const Embedding& emb, SubstrateNetwork& net) {
  if (!emb.accepted()) throw std::logic_error("cannot commit a rejected embedding");
  if (net.holds(emb.vnr_id)) {
    throw std::logic_error("request " + std::to_string(emb.vnr_id) + " is already committed");
  }
  std::map<NodeId, int> cpu;
  std::map<LinkId, int> bw;
  for (std::size_t v = 0; v < emb.node_map.size(); ++v) cpu[emb.node_map[v]] += emb.node_cpu[v];
  for (const auto& m : emb.link_map) {
    for (const auto& share : m.paths) {
      for (LinkId id : share.links) bw[id] += share.bandwidth;
    }
  }
  for (const auto& [id, amount] : cpu) {
    if (amount > net.node(id).cpu_residual) {
      throw std::logic_error("commit recheck failed: cpu on node " + std::to_string(id));
    }
  }
  for (const auto& [id, amount] : bw) {
    if (amount > net.link(id).bw_residual) {
      throw std::logic_error("commit recheck failed: bandwidth on link " + std::to_string(id));
    }
  }
  for (const auto& [id, amount] : cpu) net.reserve_cpu(id, amount);
  for (const auto& [id, amount] : bw) net.reserve_bw(id, amount);
  net.add_holder(emb.vnr_id);
}

void release(const Embedding& emb, SubstrateNetwork& net) {
  net.remove_holder(emb.vnr_id);
  for (std::size_t v = 0; v < emb.node_map.size(); ++v) net.restore_cpu(emb.node_map[v], emb.node_cpu[v]);
  for (const auto& m : emb.link_map) {
    for (const auto& share : m.paths) {
      for (LinkId id : share.links) net.restore_bw(id, share.bandwidth);
    }
  }
}

std::optional<std::string> audit_conservation(const SubstrateNetwork& net,
                                              const std::map<int, Embedding>& active) {
  std::vector<long long> cpu(net.node_count(), 0);
  std::vector<long long> bw(net.link_count(), 0);
  for (const auto& [id, emb] : active) {
    for (std::size_t v = 0; v < emb.node_map.size(); ++v) cpu[emb.node_map[v]] += emb.node_cpu[v];
    for (const auto& m : emb.link_map) {
      for (const auto& share : m.paths) {
        for (LinkId l : share.links) bw[l] += share.bandwidth;
      }
    }
  }
  for (const auto& n : net.nodes()) {
    if (n.cpu_capacity - n.cpu_residual != cpu[n.id]) {
      return "node " + std::to_string(n.id) + ": allocated " + std::to_string(n.cpu_capacity - n.cpu_residual) +
             " but active demand " + std::to_string(cpu[n.id]);
    }
  }
  for (const auto& l : net.links()) {
    if (l.bw_capacity - l.bw_residual != bw[l.id]) {
      return "link " + std::to_string(l.id) + ": allocated " + std::to_string(l.bw_capacity - l.bw_residual) +
             " but active demand " + std::to_string(bw[l.id]);
    }
  }
  if (net.holders().size() != active.size()) return std::string("holder set disagrees with active set");
  return std::nullopt;
}

bool Event::operator<(const Event& other) const {
  if (time != other.time) return time < other.time;
  if (kind != other.kind) return kind < other.kind;
  return vnr_id < other.vnr_id;
}

RunResult run(const Scenario& scenario) {
  SubstrateNetwork net = generate_substrate(scenario.substrate, mix_seed(scenario.seed, kSubstrateSeedStream));
  return run(scenario, net);
}

RunResult run(const Scenario& scenario, SubstrateNetwork& net) {
  scenario.vnr.validate();
  if (scenario.vnr_count < 0) throw ConfigError("vnr_count must be >= 0");
  const auto initial = net.snapshot();
  const DomainPaths paths(net);
  EmbedConfig embed_cfg = scenario.embed;
  embed_cfg.seed = mix_seed(scenario.seed, kAlgorithmStream);

  // Poisson arrivals: exponential inter-arrival gaps.
  Rng arrivals(mix_seed(scenario.seed, kArrivalStream));
  const std::uint64_t vnr_seed = mix_seed(scenario.seed, kVnrSeedStream);
  std::map<int, VirtualNetworkRequest> requests;
  auto later = [](const Event& x, const Event& y) { return y < x; };
  std::priority_queue<Event, std::vector<Event>, decltype(later)> queue(later);
  double clock = 0.0;
  for (int i = 0; i < scenario.vnr_count; ++i) {
    clock += arrivals.exponential(1.0 / scenario.vnr.arrival_rate);
    if (scenario.horizon && clock > *scenario.horizon) break;
    requests.emplace(i, generate_vnr(scenario.vnr, vnr_seed, i, clock));
    queue.push(Event{clock, EventKind::kArrival, i});
  }

  RunResult result;
  std::map<int, Embedding> active;
  double cost_sum = 0.0;
  double delay_sum = 0.0;
  while (!queue.empty()) {
    const Event ev = queue.top();
    if (scenario.horizon && ev.time > *scenario.horizon) break;
    queue.pop();
    ++result.events;
    if (ev.kind == EventKind::kDeparture) {
      const auto it = active.find(ev.vnr_id);
      release(it->second, net);
      active.erase(it);
      ++result.departed;
    } else {
      const auto& vnr = requests.at(ev.vnr_id);
      ++result.arrivals;
      Embedding emb = run_algorithm(scenario.algorithm, vnr, net, paths, embed_cfg);
      if (emb.accepted()) {
        commit(emb, net);
        ++result.accepted;
        cost_sum += emb.cost;
        delay_sum += emb.delay;
        queue.push(Event{ev.time + vnr.lifetime, EventKind::kDeparture, vnr.id});
        active.emplace(vnr.id, std::move(emb));
      }
      MetricsSample s;
      s.time = ev.time;
      s.arrivals = result.arrivals;
      s.acceptances = result.accepted;
      s.acceptance_rate = static_cast<double>(result.accepted) / result.arrivals;
      s.mean_cost = result.accepted > 0 ? cost_sum / result.accepted : 0.0;
      s.mean_delay = result.accepted > 0 ? delay_sum / result.accepted : 0.0;
      s.cpu_util = utilisation_cpu(net);
      s.bw_util = utilisation_bw(net);
      result.series.samples.push_back(s);
    }
    if (scenario.audit) {
      ++result.audits;
      if (!result.audit_failure) {
        if (auto failure = audit_conservation(net, active)) {
          result.audit_failure = "t=" + std::to_string(ev.time) + ": " + *failure;
        }
      }
    }
  }
  result.drained = active.empty() && net.holders().empty() && net.snapshot() == initial;
  return result;
}

void write_csv(std::ostream& out, const MetricsSeries& series) {
  out << kCsvHeader << '\n';
  char line[256];
  for (const auto& s : series.samples) {
    std::snprintf(line, sizeof line, "%.6f,%d,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", s.time, s.arrivals, s.acceptances,
                  s.acceptance_rate, s.mean_cost, s.mean_delay, s.cpu_util, s.bw_util);
    out << line;
  }
}

}  // namespace xdvne
