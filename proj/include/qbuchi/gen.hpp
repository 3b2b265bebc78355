#pragma once

#include <cstdint>
#include <vector>

#include "qbuchi/mdp.hpp"

namespace qbuchi {

/// Counter-based 64-bit generator (SplitMix64). All generated artifacts are
/// fully determined by their seed; the same seed yields byte-identical
/// output on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound > 0. Rejection-free Lemire reduction.
  uint64_t below(uint64_t bound) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(next()) * bound) >> 64);
  }

  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  uint64_t state_;
};

enum class GenKind { MdpRandom, MdpPerturbed, SccLayered };

struct GenParams {
  GenKind kind = GenKind::MdpRandom;
  uint32_t n = 1;
  double density = 2.0;          // mean out-degree (MdpRandom)
  double target_fraction = 0.1;  // MdpRandom
  double eps = 0.0;              // MdpPerturbed rewiring rate
  uint32_t layers = 1;           // SccLayered
  double intra_extra = 0.5;      // extra intra-layer edges per state beyond the cycle
  double inter_density = 1.0;    // forward inter-layer edges per state
  uint64_t seed = 0;
};

/// Random MDP: owners flipped with probability 1/2, out-edges sampled without
/// replacement to the density, sinks repaired with one uniform edge, targets
/// sampled at the target fraction.
MdpGraph gen_random_mdp(const GenParams& p);

/// Each edge head independently rewired to a uniform random state with
/// probability eps; owners and targets unchanged; edge count preserved.
MdpGraph perturb_mdp(const MdpGraph& g, double eps, uint64_t seed);

struct LayeredDigraph {
  Digraph graph;
  std::vector<std::vector<state_id>> ground_truth;  // intended components
};

/// Layered digraph: every layer wired strongly connected (random cycle plus
/// extra edges), inter-layer edges only forward in layer order, so the
/// layers are exactly the components.
LayeredDigraph gen_layered_scc_graph(const GenParams& p);

}  // namespace qbuchi
