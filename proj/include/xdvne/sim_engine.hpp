#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "xdvne/embedder.hpp"
#include "xdvne/net_model.hpp"

namespace xdvne {

enum class Algorithm { kMoo, kPso, kMc };

// Short CLI name ("moo", "pso", "mc").
std::string_view algorithm_name(Algorithm a);
// Report label, e.g. "PSO-VNE (simplified)".
std::string_view algorithm_label(Algorithm a);
// Throws ConfigError on an unknown name.
Algorithm parse_algorithm(std::string_view name);

Embedding run_algorithm(Algorithm a, const VirtualNetworkRequest& vnr, const SubstrateNetwork& net,
                        const DomainPaths& paths, const EmbedConfig& cfg);

// Reserves every resource of an accepted embedding. Rechecks feasibility
// first and throws std::logic_error, leaving the substrate untouched, if any
// reservation no longer fits or the request already holds resources.
void commit(const Embedding& emb, SubstrateNetwork& net);

// Exact inverse of commit; releasing twice throws std::logic_error.
void release(const Embedding& emb, SubstrateNetwork& net);

// Recomputes capacity - residual from the active embeddings and compares it
// with the substrate. Returns a description of the first mismatch.
std::optional<std::string> audit_conservation(const SubstrateNetwork& net,
                                              const std::map<int, Embedding>& active);

enum class EventKind { kDeparture = 0, kArrival = 1 };

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::kArrival;
  int vnr_id = 0;

  // Time, then departures before arrivals, then id.
  bool operator<(const Event& other) const;
};

struct MetricsSample {
  double time = 0.0;
  int arrivals = 0;
  int acceptances = 0;
  double acceptance_rate = 0.0;
  double mean_cost = 0.0;
  double mean_delay = 0.0;
  double cpu_util = 0.0;
  double bw_util = 0.0;

  bool operator==(const MetricsSample&) const = default;
};

struct MetricsSeries {
  std::vector<MetricsSample> samples;

  bool operator==(const MetricsSeries&) const = default;
};

struct Scenario {
  SubstrateConfig substrate;
  VnrConfig vnr;
  Algorithm algorithm = Algorithm::kMoo;
  // Events after the horizon are not processed; unset means run to drain.
  std::optional<double> horizon;
  int vnr_count = 500;
  std::uint64_t seed = 1;
  EmbedConfig embed;
  // Run the conservation audit after every event.
  bool audit = false;
};

struct RunResult {
  MetricsSeries series;
  int arrivals = 0;
  int accepted = 0;
  int departed = 0;
  int events = 0;
  int audits = 0;
  // First audit failure, if any.
  std::optional<std::string> audit_failure;
  // True when no request holds resources and every residual equals its
  // initial value.
  bool drained = false;
};

RunResult run(const Scenario& scenario);

// Same, on a caller-supplied substrate.
RunResult run(const Scenario& scenario, SubstrateNetwork& net);

inline constexpr std::string_view kCsvHeader =
    "time,arrivals,acceptances,acceptance_rate,mean_cost,mean_delay,cpu_util,bw_util";

void write_csv(std::ostream& out, const MetricsSeries& series);

}  // namespace xdvne
