#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qbuchi/engine.hpp"
#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi {

struct SccPartition {
  // Components in emission order, each member list sorted ascending.
  std::vector<std::vector<state_id>> sccs;
  std::vector<bool> is_bottom;             // no live out-edge leaves the component
  std::vector<int64_t> diameter;           // -1 = not computed / above audit cap

  size_t count() const { return sccs.size(); }
  /// Sum of computed diameters; nullopt when any component is above the cap.
  std::optional<uint64_t> d_star() const;
  /// Canonical form for partition comparison: components sorted by minimal id.
  std::vector<std::vector<state_id>> canonical() const;
};

/// Per-run instrumentation for the charging-argument audits.
struct SccStats {
  std::vector<uint32_t> spine_insertions;  // per state, across the whole run
};

struct SkelFwdResult {
  StateSet fw_set;
  StateSet new_set;
  state_id new_state = StateSet::npos;
  StateSet p;  // improved variant only; empty otherwise
};

/// Linear-time decomposition (iterative), zero ledger cost. Components are
/// listed by minimal contained state id. Owner flags are ignored.
SccPartition scc_explicit(const Digraph& g);
SccPartition scc_explicit(const Digraph& g, const StateSet& live);

/// Forward set plus skeleton (shortest path to a farthest state), computed
/// with a layer stack. pick() is the minimal state id.
SkelFwdResult skel_fwd(const Digraph& g, const StateSet& live, state_id s, SymbolicEngine& eng,
                       SccStats* stats = nullptr);

/// Variant taking the spine-set Q: returns P = FWSet cap Q and breaks the
/// skeleton pop loop at the first layer intersecting P.
SkelFwdResult improved_skel_fwd(const Digraph& g, const StateSet& live, const StateSet& q,
                                state_id s, SymbolicEngine& eng, SccStats* stats = nullptr);

/// Spine-set-guided decomposition (the prior linear-symbolic-step algorithm).
SccPartition scc_find(const Digraph& g, SymbolicEngine& eng, SccStats* stats = nullptr);
SccPartition scc_find(const Digraph& g, const StateSet& live, SymbolicEngine& eng,
                      SccStats* stats = nullptr);

/// Improved variant: skeleton computation truncated at P, backward closure
/// seeded with P. Never takes more symbolic steps than scc_find.
SccPartition improved_scc_find(const Digraph& g, SymbolicEngine& eng, SccStats* stats = nullptr);
SccPartition improved_scc_find(const Digraph& g, const StateSet& live, SymbolicEngine& eng,
                               SccStats* stats = nullptr);

/// Explicit all-pairs BFS within each component; components larger than
/// `cap` keep diameter -1 (audit skipped).
void scc_diameters(SccPartition& part, const Digraph& g, uint32_t cap = 2000);

/// Processing order for bottom-up drivers: components grouped by level in the
/// condensation (level 0 = bottom), ascending minimal id within a level.
std::vector<size_t> bottom_up_order(const SccPartition& part, const Digraph& g);

}  // namespace qbuchi
