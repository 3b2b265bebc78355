#pragma once

#include <vector>

#include "qbuchi/engine.hpp"
#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi {

/// Backward reachability to T within `live`, via pre images intersected with
/// live. Fixpoint detection costs the confirming step.
StateSet reach_backward(const StateSet& live, const StateSet& t, SymbolicEngine& eng);

/// Random attractor: least fixpoint of X -> X cup (cpre(X) cap live) from U.
/// U may already contain states outside `live` (solvers seed the fixpoint
/// with the accumulated removed set so the player-1 universal condition sees
/// the live subgraph's edge set, matching an attractor computed on (S_i,E_i)).
StateSet attr_random(const StateSet& live, const StateSet& u, SymbolicEngine& eng);

/// Player-1 attractor, dual fixpoint using cpre1.
StateSet attr_player1(const StateSet& live, const StateSet& u, SymbolicEngine& eng);

// Explicit twins: same set semantics, zero ledger cost.
StateSet explicit_reach_backward(const Digraph& g, const StateSet& live, const StateSet& t);
StateSet explicit_attr_random(const MdpGraph& g, const StateSet& live, const StateSet& u);
StateSet explicit_attr_player1(const MdpGraph& g, const StateSet& live, const StateSet& u);

struct LockstepOutcome {
  bool trap_found = false;
  state_id trap_source = StateSet::npos;
  StateSet trap;        // forward-closed in live, disjoint from stop
  uint64_t rounds = 0;  // diagnostics

  struct SourceProgress {
    state_id source;
    uint32_t explored;  // states visited / frontier size at termination
    bool reached_stop;
  };
  std::vector<SourceProgress> progress;

  static LockstepOutcome all_reached() { return {}; }
};

/// Lock-step DFS over the live subgraph from every source, one edge per
/// still-active source per round, sources advancing in ascending id order.
/// A DFS reaching `stop` is deactivated; the first DFS that exhausts its
/// reachable set without touching `stop` yields the trap.
LockstepOutcome lockstep_dfs_explicit(const Digraph& g, const StateSet& live,
                                      const std::vector<state_id>& sources,
                                      const StateSet& stop);

/// Symbolic twin: one post per active source per round, frontiers intersected
/// with live; step costs land on the engine's ledger.
LockstepOutcome lockstep_forward_symbolic(const StateSet& live,
                                          const std::vector<state_id>& sources,
                                          const StateSet& stop, SymbolicEngine& eng);

}  // namespace qbuchi
