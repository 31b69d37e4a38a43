// xdvne: generate substrates, run embedding experiments, compare summaries.
//
//   xdvne generate [--config PATH] [--domains N] [--nodes N] [--seed S] --out FILE
//   xdvne run      [--config PATH] [--algorithm moo,pso,mc] [--seeds 1-10]
//                  [--horizon T] [--vnrs N] [--out DIR] [--jobs N] [--split]
//                  [--k K] [--w-price W] [--w-delay W]
//   xdvne compare  SUMMARY_JSON
//
// Exit codes: 0 success, 2 configuration or usage error, 3 runtime error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xdvne/experiment.hpp"
#include "xdvne/serialization.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw xdvne::ConfigError("bad seed '" + text + "'");
  return v;
}

// "1,2,5" or "1-10" or a mix of both.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split_list(text)) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_seed(part));
      continue;
    }
    const auto lo = parse_seed(part.substr(0, dash));
    const auto hi = parse_seed(part.substr(dash + 1));
    if (lo > hi) throw xdvne::ConfigError("bad seed range '" + part + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw xdvne::ConfigError("no seeds given");
  return seeds;
}

xdvne::ExperimentConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return xdvne::experiment_config_from_json(xdvne::read_json_file(path));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-domain virtual network embedding simulator"};
  app.require_subcommand(1);

  std::string config_path;
  int domains = 0;
  int nodes = 0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Write a random substrate as JSON");
  generate->add_option("--config", config_path, "Experiment config JSON (substrate section is used)");
  generate->add_option("--domains", domains, "Override domain count");
  generate->add_option("--nodes", nodes, "Override nodes per domain");
  generate->add_option("--seed", gen_seed, "Generator seed");
  generate->add_option("--out", gen_out, "Output file")->required();

  std::string algorithms;
  std::string seeds;
  std::optional<double> horizon;
  std::optional<int> vnrs;
  std::string out_dir;
  std::optional<int> jobs;
  bool split = false;
  std::optional<int> k;
  std::optional<double> w_price;
  std::optional<double> w_delay;
  auto* run = app.add_subcommand("run", "Run embedding experiments and write CSVs plus summary.json");
  run->add_option("--config", config_path, "Experiment config JSON");
  run->add_option("--algorithm", algorithms, "Comma-separated subset of moo,pso,mc");
  run->add_option("--seeds", seeds, "Seeds, e.g. 1-10 or 1,4,7");
  run->add_option("--horizon", horizon, "Stop processing events after this time");
  run->add_option("--vnrs", vnrs, "Requests per run");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--jobs", jobs, "Concurrent runs");
  run->add_flag("--split", split, "Enable path splitting");
  run->add_option("--k", k, "Candidates per virtual node");
  run->add_option("--w-price", w_price, "Weight of price terms");
  run->add_option("--w-delay", w_delay, "Weight of delay terms");

  std::string summary_path;
  auto* compare = app.add_subcommand("compare", "Rank algorithms from a summary.json");
  compare->add_option("summary", summary_path, "Summary JSON written by run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*generate) {
      auto cfg = load_config(config_path).substrate;
      if (domains != 0) cfg.domain_count = domains;
      if (nodes != 0) cfg.nodes_per_domain = nodes;
      const auto net = xdvne::generate_substrate(cfg, gen_seed);
      xdvne::write_json_file(gen_out, xdvne::substrate_to_json(net));
      std::cout << "wrote " << gen_out << ": " << net.node_count() << " nodes, " << net.link_count()
                << " links\n";
    } else if (*run) {
      auto cfg = load_config(config_path);
      if (!algorithms.empty()) {
        cfg.algorithms.clear();
        for (const auto& a : split_list(algorithms)) cfg.algorithms.push_back(xdvne::parse_algorithm(a));
      }
      if (!seeds.empty()) cfg.seeds = parse_seeds(seeds);
      if (horizon) cfg.horizon = horizon;
      if (vnrs) cfg.vnr_count = *vnrs;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (jobs) cfg.jobs = *jobs;
      if (split) cfg.splitting = true;
      if (k) cfg.k = *k;
      if (w_price) cfg.weights.price = *w_price;
      if (w_delay) cfg.weights.delay = *w_delay;
      cfg.validate();
      const auto summary = xdvne::run_experiment(cfg);
      std::cout << xdvne::compare_report(summary);
      std::cout << "results in " << cfg.output_dir << '\n';
      if (!summary.failures.empty()) return kExitRuntime;
    } else if (*compare) {
      const auto summary = xdvne::summary_from_json(xdvne::read_json_file(summary_path));
      std::cout << xdvne::compare_report(summary);
    }
  } catch (const xdvne::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
