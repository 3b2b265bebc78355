#pragma once

#include "qbuchi/buchi_explicit.hpp"
#include "qbuchi/engine.hpp"
#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi {

/// Winning set plus the step-ledger snapshot and per-iteration trace of one
/// symbolic solve. The engine ledger is reset at solver entry, so the
/// snapshot covers exactly this run.
struct SymbolicSolveReport {
  StateSet winning;
  StepLedger ledger;
  SolveTrace trace;
};

SymbolicSolveReport symb_classical(const MdpGraph& g, const TargetSet& t, SymbolicEngine& eng);

SymbolicSolveReport symb_impr_algo(const MdpGraph& g, const TargetSet& t, SymbolicEngine& eng);

/// Smart-dovetailing variant: Case 2 pairs every frontier post with one
/// backward step of a persistent reach set U initialized from the targets,
/// deactivates frontiers on meeting U, and removes live \ U when U reaches a
/// fixpoint.
SymbolicSolveReport smdv_symb_impr_algo(const MdpGraph& g, const TargetSet& t,
                                        SymbolicEngine& eng);

/// Symbolic win-lose solver (flat iteration): Case 1 decomposes the live set
/// with improved_scc_find and classifies every bottom component, Case 2
/// certifies one bottom component by lockstep forward/backward search.
SymbolicSolveReport symb_impr_win_lose(const MdpGraph& g, const TargetSet& t,
                                       SymbolicEngine& eng, VerdictStream& stream);

}  // namespace qbuchi
