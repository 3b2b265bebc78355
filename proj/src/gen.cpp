#include "qbuchi/gen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qbuchi {

namespace {

// Sample `k` distinct successors for state s; k is clamped to n.
void sample_out_edges(SplitMix64& rng, uint32_t n, uint32_t k, std::set<state_id>& out) {
  k = std::min(k, n);
  while (out.size() < k) out.insert(static_cast<state_id>(rng.below(n)));
}

}  // namespace

MdpGraph gen_random_mdp(const GenParams& p) {
  if (p.kind != GenKind::MdpRandom) throw std::invalid_argument("gen_random_mdp: wrong kind");
  if (p.n == 0) throw std::invalid_argument("gen_random_mdp: n must be positive");
  if (p.density < 0 || p.density > p.n)
    throw std::invalid_argument("gen_random_mdp: density infeasible for n");
  SplitMix64 rng(p.seed);
  const uint32_t n = p.n;

  std::vector<state_id> p1;
  for (uint32_t s = 0; s < n; ++s)
    if (rng.next() & 1) p1.push_back(s);

  uint32_t base = static_cast<uint32_t>(p.density);
  double frac = p.density - base;

  std::vector<std::pair<state_id, state_id>> edges;
  for (uint32_t s = 0; s < n; ++s) {
    uint32_t k = base + (rng.unit() < frac ? 1 : 0);
    std::set<state_id> heads;
    sample_out_edges(rng, n, k, heads);
    for (state_id v : heads) edges.push_back({s, v});
  }

  // Sink repair: one uniform outgoing edge restores E(s) != empty.
  std::vector<bool> has_out(n, false);
  for (auto& e : edges) has_out[e.first] = true;
  for (uint32_t s = 0; s < n; ++s)
    if (!has_out[s]) edges.push_back({s, static_cast<state_id>(rng.below(n))});

  std::vector<state_id> targets;
  for (uint32_t s = 0; s < n; ++s)
    if (rng.unit() < p.target_fraction) targets.push_back(s);

  return make_mdp(n, p1, edges, targets);
}

MdpGraph perturb_mdp(const MdpGraph& g, double eps, uint64_t seed) {
  if (eps < 0 || eps > 1) throw std::invalid_argument("perturb_mdp: eps must be in [0,1]");
  SplitMix64 rng(seed);
  const uint32_t n = g.n();

  std::vector<std::pair<state_id, state_id>> edges;
  std::vector<std::set<state_id>> heads(n);
  for (uint32_t s = 0; s < n; ++s)
    for (state_id v : g.graph.succ[s]) heads[s].insert(v);

  for (uint32_t s = 0; s < n; ++s) {
    for (state_id v : g.graph.succ[s]) {
      state_id head = v;
      if (rng.unit() < eps && heads[s].size() < n) {
        // Rewire to a head this state does not already have, keeping the
        // edge count exact.
        state_id cand;
        do {
          cand = static_cast<state_id>(rng.below(n));
        } while (heads[s].count(cand) && cand != v);
        if (cand != v) {
          heads[s].erase(v);
          heads[s].insert(cand);
          head = cand;
        }
      }
      edges.push_back({s, head});
    }
  }

  std::vector<bool> has_out(n, false);
  for (auto& e : edges) has_out[e.first] = true;
  for (uint32_t s = 0; s < n; ++s)
    if (!has_out[s]) edges.push_back({s, static_cast<state_id>(rng.below(n))});

  MdpGraph out;
  out.graph = Digraph::from_edges(n, edges);
  out.player1 = g.player1;
  out.target = g.target;
  return out;
}

LayeredDigraph gen_layered_scc_graph(const GenParams& p) {
  if (p.kind != GenKind::SccLayered)
    throw std::invalid_argument("gen_layered_scc_graph: wrong kind");
  if (p.layers == 0 || p.layers > p.n)
    throw std::invalid_argument("gen_layered_scc_graph: layer sizes infeasible");
  SplitMix64 rng(p.seed);
  const uint32_t n = p.n;
  const uint32_t k = p.layers;

  LayeredDigraph out;
  out.ground_truth.resize(k);
  // Near-equal split; layer ids ascend in topological order.
  uint32_t next_state = 0;
  for (uint32_t l = 0; l < k; ++l) {
    uint32_t size = n / k + (l < n % k ? 1 : 0);
    for (uint32_t i = 0; i < size; ++i) out.ground_truth[l].push_back(next_state++);
  }

  std::set<std::pair<state_id, state_id>> edges;
  for (uint32_t l = 0; l < k; ++l) {
    const auto& layer = out.ground_truth[l];
    uint32_t size = static_cast<uint32_t>(layer.size());
    if (size > 1) {
      // Random cycle through the layer guarantees strong connectivity.
      std::vector<state_id> perm(layer);
      for (uint32_t i = size - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.below(i + 1)]);
      for (uint32_t i = 0; i < size; ++i) edges.insert({perm[i], perm[(i + 1) % size]});
      uint32_t extra = static_cast<uint32_t>(p.intra_extra * size);
      for (uint32_t e = 0; e < extra; ++e)
        edges.insert({layer[rng.below(size)], layer[rng.below(size)]});
    }
    // Forward edges into strictly later layers.
    if (l + 1 < k) {
      uint32_t cross = static_cast<uint32_t>(std::ceil(p.inter_density * size));
      uint32_t below_count = n - (layer.back() + 1);
      for (uint32_t e = 0; e < cross; ++e) {
        state_id u = layer[rng.below(size)];
        state_id v = static_cast<state_id>(layer.back() + 1 + rng.below(below_count));
        edges.insert({u, v});
      }
    }
  }

  out.graph = Digraph::from_edges(
      n, std::vector<std::pair<state_id, state_id>>(edges.begin(), edges.end()));
  return out;
}

}  // namespace qbuchi
