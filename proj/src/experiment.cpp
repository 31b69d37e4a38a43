#include "xdvne/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

namespace xdvne {

namespace {

constexpr std::string_view kSummaryFormat = "xdvne-summary";

Json estimate_to_json(const Estimate& e) {
  return Json{{"mean", e.mean}, {"ci95", e.ci95 ? Json(*e.ci95) : Json(nullptr)}};
}

Estimate estimate_from_json(const Json& j) {
  Estimate e;
  e.mean = j.at("mean").get<double>();
  if (!j.at("ci95").is_null()) e.ci95 = j.at("ci95").get<double>();
  return e;
}

bool same_value(double a, double b) { return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)}); }

}  // namespace

void ExperimentConfig::validate() const {
  substrate.validate();
  vnr.validate();
  if (algorithms.empty()) throw ConfigError("at least one algorithm is required");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (horizon && !(*horizon >= 0.0)) throw ConfigError("horizon must be >= 0");
  if (vnr_count < 0) throw ConfigError("vnr_count must be >= 0");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(weights.price >= 0.0) || !(weights.delay >= 0.0)) throw ConfigError("weights must be >= 0");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
}

Scenario ExperimentConfig::scenario(Algorithm a, std::uint64_t seed) const {
  Scenario s;
  s.substrate = substrate;
  s.vnr = vnr;
  s.algorithm = a;
  s.horizon = horizon;
  s.vnr_count = vnr_count;
  s.seed = seed;
  s.embed.weights = weights;
  s.embed.k = k;
  s.embed.splitting = splitting;
  return s;
}

Json to_json(const ExperimentConfig& cfg) {
  Json algorithms = Json::array();
  for (auto a : cfg.algorithms) algorithms.push_back(algorithm_name(a));
  return Json{{"substrate", to_json(cfg.substrate)},
              {"vnr", to_json(cfg.vnr)},
              {"algorithms", std::move(algorithms)},
              {"seeds", cfg.seeds},
              {"horizon", cfg.horizon ? Json(*cfg.horizon) : Json(nullptr)},
              {"vnr_count", cfg.vnr_count},
              {"output_dir", cfg.output_dir},
              {"weights", {{"price", cfg.weights.price}, {"delay", cfg.weights.delay}}},
              {"k", cfg.k},
              {"splitting", cfg.splitting},
              {"jobs", cfg.jobs}};
}

ExperimentConfig experiment_config_from_json(const Json& doc) {
  reject_unknown_keys(doc,
                      {"substrate", "vnr", "algorithms", "seeds", "horizon", "vnr_count", "output_dir", "weights",
                       "k", "splitting", "jobs"},
                      "experiment");
  ExperimentConfig cfg;
  try {
    if (doc.contains("substrate")) cfg.substrate = substrate_config_from_json(doc["substrate"]);
    if (doc.contains("vnr")) cfg.vnr = vnr_config_from_json(doc["vnr"]);
    if (doc.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& a : doc["algorithms"]) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    if (doc.contains("seeds")) cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
    if (doc.contains("horizon")) {
      if (doc["horizon"].is_null()) {
        cfg.horizon.reset();
      } else {
        cfg.horizon = doc["horizon"].get<double>();
      }
    }
    if (doc.contains("vnr_count")) cfg.vnr_count = doc["vnr_count"].get<int>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("weights")) {
      const auto& w = doc["weights"];
      reject_unknown_keys(w, {"price", "delay"}, "weights");
      if (w.contains("price")) cfg.weights.price = w["price"].get<double>();
      if (w.contains("delay")) cfg.weights.delay = w["delay"].get<double>();
    }
    if (doc.contains("k")) cfg.k = doc["k"].get<int>();
    if (doc.contains("splitting")) cfg.splitting = doc["splitting"].get<bool>();
    if (doc.contains("jobs")) cfg.jobs = doc["jobs"].get<int>();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("experiment: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Estimate estimate(const std::vector<double>& values) {
  Estimate e;
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  e.mean = sum / n;
  if (values.size() < 2) return e;
  double ss = 0.0;
  for (double v : values) ss += (v - e.mean) * (v - e.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  e.ci95 = boost::math::quantile(dist, 0.975) * sd / std::sqrt(n);
  return e;
}

Json to_json(const ExperimentSummary& s) {
  Json algorithms = Json::array();
  for (const auto& a : s.algorithms) {
    algorithms.push_back({{"name", algorithm_name(a.algorithm)},
                          {"label", algorithm_label(a.algorithm)},
                          {"runs", a.runs},
                          {"mean_cost", estimate_to_json(a.mean_cost)},
                          {"mean_delay", estimate_to_json(a.mean_delay)},
                          {"acceptance_rate", estimate_to_json(a.acceptance_rate)}});
  }
  Json failures = Json::array();
  for (const auto& f : s.failures) {
    failures.push_back({{"algorithm", algorithm_name(f.algorithm)}, {"seed", f.seed}, {"message", f.message}});
  }
  return Json{{"format", kSummaryFormat},
              {"version", 1},
              {"algorithms", std::move(algorithms)},
              {"failures", std::move(failures)}};
}

ExperimentSummary summary_from_json(const Json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kSummaryFormat || doc.at("version").get<int>() != 1) {
      throw ConfigError("not an xdvne summary document");
    }
    ExperimentSummary s;
    for (const auto& a : doc.at("algorithms")) {
      AlgorithmSummary entry;
      entry.algorithm = parse_algorithm(a.at("name").get<std::string>());
      entry.runs = a.at("runs").get<int>();
      entry.mean_cost = estimate_from_json(a.at("mean_cost"));
      entry.mean_delay = estimate_from_json(a.at("mean_delay"));
      entry.acceptance_rate = estimate_from_json(a.at("acceptance_rate"));
      s.algorithms.push_back(entry);
    }
    for (const auto& f : doc.at("failures")) {
      s.failures.push_back(RunFailure{parse_algorithm(f.at("algorithm").get<std::string>()),
                                      f.at("seed").get<std::uint64_t>(), f.at("message").get<std::string>()});
    }
    return s;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("summary schema mismatch: ") + e.what());
  }
}

ExperimentSummary summarise(const std::vector<Algorithm>& algorithms, const std::vector<RunOutcome>& outcomes,
                            std::vector<RunFailure> failures) {
  ExperimentSummary s;
  for (auto a : algorithms) {
    std::vector<double> cost;
    std::vector<double> delay;
    std::vector<double> acceptance;
    for (const auto& o : outcomes) {
      if (o.algorithm != a) continue;
      cost.push_back(o.mean_cost);
      delay.push_back(o.mean_delay);
      acceptance.push_back(o.acceptance_rate);
    }
    s.algorithms.push_back(AlgorithmSummary{a, static_cast<int>(cost.size()), estimate(cost), estimate(delay),
                                            estimate(acceptance)});
  }
  s.failures = std::move(failures);
  return s;
}

std::string run_csv_name(Algorithm a, std::uint64_t seed) {
  return std::string(algorithm_name(a)) + "_seed" + std::to_string(seed) + ".csv";
}

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);

  struct Task {
    Algorithm algorithm;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (auto a : cfg.algorithms) {
    for (auto seed : cfg.seeds) tasks.push_back({a, seed});
  }
  std::vector<std::optional<RunOutcome>> outcomes(tasks.size());
  std::vector<std::optional<RunFailure>> failures(tasks.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& t = tasks[i];
      try {
        const auto result = run(cfg.scenario(t.algorithm, t.seed));
        const auto path = fs::path(cfg.output_dir) / run_csv_name(t.algorithm, t.seed);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        write_csv(out, result.series);
        out.close();
        if (!out) throw std::runtime_error("write failed: " + path.string());
        RunOutcome o{t.algorithm, t.seed, 0.0, 0.0, 0.0};
        if (!result.series.samples.empty()) {
          const auto& last = result.series.samples.back();
          o.mean_cost = last.mean_cost;
          o.mean_delay = last.mean_delay;
          o.acceptance_rate = last.acceptance_rate;
        }
        outcomes[i] = o;
      } catch (const std::exception& e) {
        failures[i] = RunFailure{t.algorithm, t.seed, e.what()};
      }
    }
  };
  const int threads = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
  }

  std::vector<RunOutcome> done;
  std::vector<RunFailure> failed;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (outcomes[i]) done.push_back(*outcomes[i]);
    if (failures[i]) failed.push_back(*failures[i]);
  }
  auto summary = summarise(cfg.algorithms, done, std::move(failed));
  write_json_file((fs::path(cfg.output_dir) / "summary.json").string(), to_json(summary));
  return summary;
}

std::string compare_report(const ExperimentSummary& s) {
  struct Metric {
    const char* title;
    const Estimate AlgorithmSummary::*field;
    bool higher_is_better;
  };
  const Metric metrics[] = {
      {"Embedding cost (lower is better)", &AlgorithmSummary::mean_cost, false},
      {"Network delay (lower is better)", &AlgorithmSummary::mean_delay, false},
      {"Acceptance rate (higher is better)", &AlgorithmSummary::acceptance_rate, true},
  };
  std::ostringstream out;
  char line[256];
  for (const auto& m : metrics) {
    std::vector<const AlgorithmSummary*> rows;
    for (const auto& a : s.algorithms) rows.push_back(&a);
    std::stable_sort(rows.begin(), rows.end(), [&](const AlgorithmSummary* x, const AlgorithmSummary* y) {
      const double vx = (x->*m.field).mean;
      const double vy = (y->*m.field).mean;
      if (same_value(vx, vy)) return false;
      return m.higher_is_better ? vx > vy : vx < vy;
    });
    out << m.title << '\n';
    std::snprintf(line, sizeof line, "  %-5s %-22s %14s %12s\n", "rank", "algorithm", "mean", "ci95");
    out << line;
    int rank = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& e = rows[i]->*m.field;
      const bool tied_prev = i > 0 && same_value(e.mean, (rows[i - 1]->*m.field).mean);
      const bool tied_next = i + 1 < rows.size() && same_value(e.mean, (rows[i + 1]->*m.field).mean);
      if (!tied_prev) rank = static_cast<int>(i) + 1;
      char ci[32] = "n/a";
      if (e.ci95) std::snprintf(ci, sizeof ci, "+/-%.4f", *e.ci95);
      std::snprintf(line, sizeof line, "  %-5d %-22s %14.4f %12s%s\n", rank,
                    std::string(algorithm_label(rows[i]->algorithm)).c_str(), e.mean, ci,
                    (tied_prev || tied_next) ? "  (tie)" : "");
      out << line;
    }
    out << '\n';
  }
  if (!s.failures.empty()) {
    out << "Failed runs\n";
    for (const auto& f : s.failures) {
      out << "  " << algorithm_name(f.algorithm) << " seed " << f.seed << ": " << f.message << '\n';
    }
  }
  return out.str();
}

}  // namespace xdvne
