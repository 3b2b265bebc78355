#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi {

/// Almost-sure winning set plus a witness pure memoryless strategy that
/// follows shortest paths to the surviving target states.
struct WinningSet {
  std::vector<state_id> states;  // sorted
  MemorylessStrategy witness;
};

enum class Verdict : uint8_t { Win, Lose };

struct VerdictEvent {
  uint32_t iteration;
  Verdict verdict;
  std::vector<state_id> states;  // attractor-closed increment, sorted
};

/// Ordered Win/Lose events; increments are pairwise disjoint and their
/// union partitions the state space at termination.
struct VerdictStream {
  std::vector<VerdictEvent> events;

  std::vector<state_id> winning() const;
  std::vector<state_id> losing() const;
  std::string to_jsonl() const;
};

/// Case taken per iteration, for bound audits.
struct IterationRecord {
  int case_taken;  // 1 or 2
  uint32_t live_before;
  uint32_t removed;
};
using SolveTrace = std::vector<IterationRecord>;

WinningSet classical_explicit(const MdpGraph& g, const TargetSet& t);

WinningSet impr_algo(const MdpGraph& g, const TargetSet& t, SolveTrace* trace = nullptr);

enum class WinLoseMode { SccDriver, Flat };

WinningSet win_lose(const MdpGraph& g, const TargetSet& t, VerdictStream& stream,
                    WinLoseMode mode = WinLoseMode::SccDriver);

WinningSet impr_win_lose(const MdpGraph& g, const TargetSet& t, VerdictStream& stream,
                         WinLoseMode mode = WinLoseMode::SccDriver);

/// Brute-force reference: enumerates all pure memoryless strategies and
/// classifies states through the induced Markov chains. Feasible only while
/// the strategy space (product of player-1 out-degrees) stays within 10^6.
WinningSet oracle_almost_sure(const MdpGraph& g, const TargetSet& t);
bool oracle_feasible(const MdpGraph& g, uint64_t limit = 1000000);

/// Shortest-path witness strategy on a known winning set.
MemorylessStrategy make_witness(const MdpGraph& g, const TargetSet& t,
                                const std::vector<state_id>& winning);

/// Checks the witness invariants: choices stay inside the winning set, no
/// random edge leaves it, and every winning state reaches a target inside it.
bool check_witness(const MdpGraph& g, const TargetSet& t, const WinningSet& w,
                   std::string* why = nullptr);

uint64_t hash_ids(uint32_t n, const std::vector<state_id>& ids);

}  // namespace qbuchi
