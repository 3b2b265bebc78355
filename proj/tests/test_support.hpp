#pragma once

// Independent oracles for the image operators and attractors. These stay
// deliberately naive (per-state scans, inductive definitions) so the
// implementations under test are checked against a different computation
// path.

#include <vector>

#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi::testing {

inline StateSet oracle_pre(const Digraph& g, const StateSet& x) {
  StateSet r(g.n);
  for (uint32_t s = 0; s < g.n; ++s)
    for (state_id v : g.succ[s])
      if (x.test(v)) {
        r.set(s);
        break;
      }
  return r;
}

inline StateSet oracle_post(const Digraph& g, const StateSet& x) {
  StateSet r(g.n);
  for (uint32_t s = 0; s < g.n; ++s)
    if (x.test(s))
      for (state_id v : g.succ[s]) r.set(v);
  return r;
}

inline StateSet oracle_cpre(const MdpGraph& g, const StateSet& x, bool universal_p1) {
  StateSet r(g.n());
  for (uint32_t s = 0; s < g.n(); ++s) {
    bool universal = (g.is_player1(s) == universal_p1);
    if (universal) {
      bool all = !g.graph.succ[s].empty();
      for (state_id v : g.graph.succ[s])
        if (!x.test(v)) {
          all = false;
          break;
        }
      if (all) r.set(s);
    } else {
      for (state_id v : g.graph.succ[s])
        if (x.test(v)) {
          r.set(s);
          break;
        }
    }
  }
  return r;
}

// Inductive attractor exactly as defined: X0 = U, X_{i+1} adds live states
// whose owner condition holds against X_i, until no change.
inline StateSet oracle_attr(const MdpGraph& g, const StateSet& live, const StateSet& u,
                            bool universal_p1) {
  StateSet x = u;
  for (;;) {
    StateSet next = x | (oracle_cpre(g, x, universal_p1) & live);
    if (next == x) return x;
    x = next;
  }
}

// Pairwise-reachability certificate: the component containing s must be
// exactly the states both reaching s and reachable from s.
inline StateSet oracle_fwd_reach(const Digraph& g, const StateSet& live, state_id s) {
  StateSet r(g.n);
  std::vector<state_id> stack{s};
  r.set(s);
  while (!stack.empty()) {
    state_id u = stack.back();
    stack.pop_back();
    for (state_id v : g.succ[u])
      if (live.test(v) && !r.test(v)) {
        r.set(v);
        stack.push_back(v);
      }
  }
  return r;
}

inline StateSet oracle_bwd_reach(const Digraph& g, const StateSet& live, state_id s) {
  StateSet r(g.n);
  std::vector<state_id> stack{s};
  r.set(s);
  while (!stack.empty()) {
    state_id u = stack.back();
    stack.pop_back();
    for (state_id v : g.pred[u])
      if (live.test(v) && !r.test(v)) {
        r.set(v);
        stack.push_back(v);
      }
  }
  return r;
}

inline StateSet oracle_scc_of(const Digraph& g, state_id s) {
  StateSet live = StateSet::full(g.n);
  return oracle_fwd_reach(g, live, s) & oracle_bwd_reach(g, live, s);
}

inline Digraph chain_graph(uint32_t n, bool last_self_loop = true) {
  std::vector<std::pair<state_id, state_id>> edges;
  for (uint32_t i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  if (last_self_loop) edges.push_back({n - 1, n - 1});
  return Digraph::from_edges(n, edges);
}

}  // namespace qbuchi::testing
