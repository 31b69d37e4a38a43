#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xdvne/serialization.hpp"
#include "xdvne/sim_engine.hpp"

namespace xdvne {

// Everything needed to reproduce one comparison experiment. Defaults give
// the desk-scale setup: four 30-node domains, three algorithms, ten seeds,
// 500 requests each.
struct ExperimentConfig {
  SubstrateConfig substrate;
  VnrConfig vnr;
  std::vector<Algorithm> algorithms{Algorithm::kMoo, Algorithm::kPso, Algorithm::kMc};
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::optional<double> horizon;
  int vnr_count = 500;
  std::string output_dir = "results";
  ObjectiveWeights weights;
  int k = 2;
  bool splitting = false;
  int jobs = 1;

  void validate() const;
  Scenario scenario(Algorithm a, std::uint64_t seed) const;
  bool operator==(const ExperimentConfig&) const = default;
};

Json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const Json& doc);

// Mean and 95% Student-t half-width over seeds; the half-width is absent
// for a single seed.
struct Estimate {
  double mean = 0.0;
  std::optional<double> ci95;
  bool operator==(const Estimate&) const = default;
};

Estimate estimate(const std::vector<double>& values);

struct AlgorithmSummary {
  Algorithm algorithm = Algorithm::kMoo;
  int runs = 0;
  Estimate mean_cost;
  Estimate mean_delay;
  Estimate acceptance_rate;
  bool operator==(const AlgorithmSummary&) const = default;
};

struct RunFailure {
  Algorithm algorithm = Algorithm::kMoo;
  std::uint64_t seed = 0;
  std::string message;
  bool operator==(const RunFailure&) const = default;
};

struct ExperimentSummary {
  std::vector<AlgorithmSummary> algorithms;
  std::vector<RunFailure> failures;
  bool operator==(const ExperimentSummary&) const = default;
};

// Summary document:
//   {"format": "xdvne-summary", "version": 1,
//    "algorithms": [{"name", "label", "runs",
//                    "mean_cost" | "mean_delay" | "acceptance_rate":
//                        {"mean", "ci95" (number or null)}}],
//    "failures": [{"algorithm", "seed", "message"}]}
Json to_json(const ExperimentSummary& s);
ExperimentSummary summary_from_json(const Json& doc);

// Final-sample metrics of one run.
struct RunOutcome {
  Algorithm algorithm = Algorithm::kMoo;
  std::uint64_t seed = 0;
  double mean_cost = 0.0;
  double mean_delay = 0.0;
  double acceptance_rate = 0.0;
};

ExperimentSummary summarise(const std::vector<Algorithm>& algorithms, const std::vector<RunOutcome>& outcomes,
                            std::vector<RunFailure> failures);

// File name of one run's CSV inside the output directory.
std::string run_csv_name(Algorithm a, std::uint64_t seed);

// Runs every (algorithm, seed) pair with up to cfg.jobs threads, writes one
// CSV per run and summary.json into cfg.output_dir. A failing run is
// recorded in the summary; the others continue.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

// Per-metric ranking tables: cost and delay ascending, acceptance
// descending. Equal means share a rank and are marked as ties.
std::string compare_report(const ExperimentSummary& s);

}  // namespace xdvne
