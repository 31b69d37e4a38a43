#pragma once

#include <cstdint>

#include "xdvne/net_model.hpp"
#include "xdvne/rng.hpp"

namespace fixtures {

// Two domains of three nodes each with the default attribute ranges.
// `tight` shrinks capacities so CPU and bandwidth constraints bind.
inline xdvne::SubstrateConfig toy_substrate_config(bool tight = false) {
  xdvne::SubstrateConfig cfg;
  cfg.domain_count = 2;
  cfg.nodes_per_domain = 3;
  if (tight) {
    cfg.cpu_range = {1, 12};
    cfg.bw_range = {1, 20};
  }
  return cfg;
}

struct ToyInstance {
  xdvne::SubstrateNetwork net;
  xdvne::VirtualNetworkRequest vnr;
};

// Toy substrate plus a request of `virtual_nodes` nodes (1 or 2; two nodes
// always share one link).
inline ToyInstance toy_instance(std::uint64_t seed, int virtual_nodes = 2, bool tight = false) {
  ToyInstance t{xdvne::generate_substrate(toy_substrate_config(tight), seed), {}};
  if (virtual_nodes >= 2) {
    xdvne::VnrConfig vc;
    vc.node_count_range = {virtual_nodes, virtual_nodes};
    t.vnr = xdvne::generate_vnr(vc, seed, 0, 0.0);
  } else {
    xdvne::Rng rng(xdvne::mix_seed(seed, 99));
    t.vnr.id = 0;
    t.vnr.nodes.push_back({0, rng.uniform_int(1, 10)});
    t.vnr.lifetime = 1.0;
  }
  return t;
}

}  // namespace fixtures
