#include "qbuchi/buchi_explicit.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "qbuchi/attractors.hpp"
#include "qbuchi/scc.hpp"

namespace qbuchi {

namespace {

// Engine-free twins used by the explicit solvers; the symbolic ledger is
// never touched here.
StateSet reach_t(const MdpGraph& g, const StateSet& live, const TargetSet& t) {
  return explicit_reach_backward(g.graph, live, t.as_set(g.n()) & live);
}

uint64_t sqrt_threshold(uint64_t m) {
  return static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(m))));
}

StateSet preds_of(const Digraph& g, const StateSet& l, const StateSet& live) {
  StateSet j(g.n);
  l.for_each([&](state_id s) {
    for (state_id p : g.pred[s])
      if (live.test(p)) j.set(p);
  });
  return j;
}

}  // namespace

std::vector<state_id> VerdictStream::winning() const {
  std::vector<state_id> out;
  for (const auto& e : events)
    if (e.verdict == Verdict::Win) out.insert(out.end(), e.states.begin(), e.states.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<state_id> VerdictStream::losing() const {
  std::vector<state_id> out;
  for (const auto& e : events)
    if (e.verdict == Verdict::Lose) out.insert(out.end(), e.states.begin(), e.states.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string VerdictStream::to_jsonl() const {
  std::ostringstream os;
  for (const auto& e : events) {
    os << "{\"iteration\":" << e.iteration << ",\"verdict\":\""
       << (e.verdict == Verdict::Win ? "win" : "lose") << "\",\"states\":[";
    for (size_t i = 0; i < e.states.size(); ++i) {
      if (i) os << ',';
      os << e.states[i];
    }
    os << "]}\n";
  }
  return os.str();
}

uint64_t hash_ids(uint32_t n, const std::vector<state_id>& ids) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(n);
  for (state_id s : ids) mix(s);
  return h;
}

WinningSet classical_explicit(const MdpGraph& g, const TargetSet& t) {
  StateSet live = StateSet::full(g.n());
  StateSet dead(g.n());
  for (;;) {
    StateSet y = reach_t(g, live, t);
    StateSet q = live - y;
    if (q.empty()) break;
    StateSet closed = explicit_attr_random(g, live, q | dead);
    live -= closed;
    dead = std::move(closed);
  }
  WinningSet w;
  w.states = live.to_ids();
  w.witness = make_witness(g, t, w.states);
  return w;
}

WinningSet impr_algo(const MdpGraph& g, const TargetSet& t, SolveTrace* trace) {
  const uint32_t n = g.n();
  const uint64_t k = sqrt_threshold(g.m());
  StateSet live = StateSet::full(n);
  StateSet dead(n);
  StateSet l_since_case1(n), j(n);
  uint64_t i = 0;

  for (;;) {
    StateSet q(n);
    bool from_case1;
    if (i == 0 || j.count() > k) {
      from_case1 = true;
      StateSet y = reach_t(g, live, t);
      q = live - y;
      if (trace) trace->push_back({1, live.count(), 0});
      if (q.empty()) break;
    } else {
      from_case1 = false;
      if (trace) trace->push_back({2, live.count(), 0});
      auto out = lockstep_dfs_explicit(g.graph, live, j.to_ids(), t.as_set(n) & live);
      if (!out.trap_found) break;  // every frontier reached the target set
      q = out.trap;
    }

    StateSet closed = explicit_attr_random(g, live, q | dead);
    StateSet removed = closed & live;
    if (trace) trace->back().removed = removed.count();
    live -= removed;
    dead = std::move(closed);
    if (from_case1)
      l_since_case1 = removed;
    else
      l_since_case1 |= removed;
    j = preds_of(g.graph, l_since_case1, live);
    ++i;
  }

  WinningSet w;
  w.states = live.to_ids();
  w.witness = make_witness(g, t, w.states);
  return w;
}

namespace {

struct WinLoseState {
  StateSet w1, w2, live;
  uint32_t iter = 0;
};

// Classify the given bottom components against the pre-closure W1, then
// close both attractors globally (player-1 side first) and emit the
// attractor-closed increments.
void classify_and_close(const MdpGraph& g, const TargetSet& t, WinLoseState& st,
                        const std::vector<const std::vector<state_id>*>& bottoms,
                        VerdictStream& stream) {
  const uint32_t n = g.n();
  StateSet pend_w(n), pend_l(n);
  for (const auto* comp : bottoms) {
    bool win = false;
    for (state_id s : *comp) {
      if (t.contains(s)) {
        win = true;
        break;
      }
      for (state_id v : g.graph.succ[s])
        if (st.w1.test(v)) {
          win = true;
          break;
        }
      if (win) break;
    }
    for (state_id s : *comp) (win ? pend_w : pend_l).set(s);
  }

  StateSet w1_new = explicit_attr_player1(g, st.live, st.w1 | pend_w);
  StateSet win_inc = w1_new - st.w1;
  st.live -= win_inc;
  StateSet w2_new = explicit_attr_random(g, st.live, st.w2 | pend_l);
  StateSet lose_inc = w2_new - st.w2;
  st.live -= lose_inc;

  if (!win_inc.empty()) stream.events.push_back({st.iter, Verdict::Win, win_inc.to_ids()});
  if (!lose_inc.empty()) stream.events.push_back({st.iter, Verdict::Lose, lose_inc.to_ids()});
  st.w1 = std::move(w1_new);
  st.w2 = std::move(w2_new);
  ++st.iter;
}

void win_lose_flat(const MdpGraph& g, const TargetSet& t, WinLoseState& st,
                   const StateSet& scope, VerdictStream& stream) {
  for (;;) {
    StateSet local = scope & st.live;
    if (local.empty()) return;
    SccPartition part = scc_explicit(g.graph, local);
    std::vector<const std::vector<state_id>*> bottoms;
    for (size_t c = 0; c < part.count(); ++c)
      if (part.is_bottom[c]) bottoms.push_back(&part.sccs[c]);
    classify_and_close(g, t, st, bottoms, stream);
  }
}

}  // namespace

WinningSet win_lose(const MdpGraph& g, const TargetSet& t, VerdictStream& stream,
                    WinLoseMode mode) {
  const uint32_t n = g.n();
  WinLoseState st{StateSet(n), StateSet(n), StateSet::full(n)};
  if (mode == WinLoseMode::Flat) {
    win_lose_flat(g, t, st, StateSet::full(n), stream);
  } else {
    SccPartition part = scc_explicit(g.graph);
    for (size_t ci : bottom_up_order(part, g.graph))
      win_lose_flat(g, t, st, StateSet::from_range(n, part.sccs[ci]), stream);
  }
  WinningSet w;
  w.states = st.w1.to_ids();
  w.witness = make_witness(g, t, w.states);
  return w;
}

namespace {

void impr_win_lose_run(const MdpGraph& g, const TargetSet& t, WinLoseState& st,
                       const StateSet& scope, uint64_t k, VerdictStream& stream) {
  const uint32_t n = g.n();
  StateSet l_since_case1(n), j(n);
  uint64_t i = 0;
  StateSet no_stop(n);

  for (;;) {
    StateSet local = scope & st.live;
    if (local.empty()) return;

    std::vector<const std::vector<state_id>*> bottoms;
    SccPartition part;
    std::vector<std::vector<state_id>> single;
    bool from_case1;
    std::vector<state_id> sources = j.to_ids();
    if (i == 0 || j.count() > k || sources.empty()) {
      from_case1 = true;
      part = scc_explicit(g.graph, local);
      for (size_t c = 0; c < part.count(); ++c)
        if (part.is_bottom[c]) bottoms.push_back(&part.sccs[c]);
    } else {
      from_case1 = false;
      // Lock-step DFS without a stop set; the first search to exhaust its
      // reachable set has found the (smallest) bottom component.
      auto out = lockstep_dfs_explicit(g.graph, st.live, sources, no_stop);
      if (!out.trap_found)
        throw std::logic_error("impr_win_lose: lock-step search found no bottom component");
      single.push_back(out.trap.to_ids());
      bottoms.push_back(&single.back());
    }

    StateSet live_before = st.live;
    classify_and_close(g, t, st, bottoms, stream);
    StateSet removed = live_before - st.live;

    if (from_case1)
      l_since_case1 = removed;
    else
      l_since_case1 |= removed;
    j = preds_of(g.graph, l_since_case1, st.live) & scope;
    ++i;
  }
}

}  // namespace

WinningSet impr_win_lose(const MdpGraph& g, const TargetSet& t, VerdictStream& stream,
                         WinLoseMode mode) {
  const uint32_t n = g.n();
  const uint64_t k = sqrt_threshold(g.m());
  WinLoseState st{StateSet(n), StateSet(n), StateSet::full(n)};
  if (mode == WinLoseMode::Flat) {
    impr_win_lose_run(g, t, st, StateSet::full(n), k, stream);
  } else {
    SccPartition part = scc_explicit(g.graph);
    for (size_t ci : bottom_up_order(part, g.graph))
      impr_win_lose_run(g, t, st, StateSet::from_range(n, part.sccs[ci]), k, stream);
  }
  WinningSet w;
  w.states = st.w1.to_ids();
  w.witness = make_witness(g, t, w.states);
  return w;
}

bool oracle_feasible(const MdpGraph& g, uint64_t limit) {
  uint64_t product = 1;
  for (state_id s : g.player1.to_ids()) {
    product *= g.graph.succ[s].size();
    if (product > limit) return false;
  }
  return true;
}

WinningSet oracle_almost_sure(const MdpGraph& g, const TargetSet& t) {
  if (!oracle_feasible(g))
    throw std::invalid_argument("oracle_almost_sure: strategy space exceeds 10^6");
  const uint32_t n = g.n();
  auto p1 = g.player1.to_ids();

  std::vector<size_t> choice(p1.size(), 0);
  StateSet wins(n);
  StateSet t_set = t.as_set(n);

  // Chain adjacency under the current strategy: random states keep all
  // edges, player-1 states keep the single chosen one.
  Digraph chain;
  chain.n = n;
  chain.succ.assign(n, {});
  chain.pred.assign(n, {});

  for (;;) {
    chain.m = 0;
    for (uint32_t s = 0; s < n; ++s) {
      chain.succ[s].clear();
      chain.pred[s].clear();
    }
    for (uint32_t s = 0; s < n; ++s) {
      if (g.player1.test(s)) continue;
      for (state_id v : g.graph.succ[s]) chain.succ[s].push_back(v);
    }
    for (size_t idx = 0; idx < p1.size(); ++idx)
      chain.succ[p1[idx]].push_back(g.graph.succ[p1[idx]][choice[idx]]);
    for (uint32_t s = 0; s < n; ++s) {
      chain.m += chain.succ[s].size();
      for (state_id v : chain.succ[s]) chain.pred[v].push_back(s);
    }
    for (auto& l : chain.pred) std::sort(l.begin(), l.end());

    // A state wins under this strategy iff no bad closed recurrent set is
    // reachable from it in the chain.
    SccPartition part = scc_explicit(chain);
    StateSet bad(n);
    for (size_t c = 0; c < part.count(); ++c)
      if (part.is_bottom[c]) {
        bool good = false;
        for (state_id s : part.sccs[c])
          if (t_set.test(s)) {
            good = true;
            break;
          }
        if (!good)
          for (state_id s : part.sccs[c]) bad.set(s);
      }
    StateSet reaches_bad = explicit_reach_backward(chain, StateSet::full(n), bad);
    wins |= reaches_bad.complement();

    // Next strategy (mixed-radix increment).
    size_t pos = 0;
    while (pos < p1.size()) {
      if (++choice[pos] < g.graph.succ[p1[pos]].size()) break;
      choice[pos] = 0;
      ++pos;
    }
    if (pos == p1.size()) break;
  }

  WinningSet w;
  w.states = wins.to_ids();
  w.witness = make_witness(g, t, w.states);
  return w;
}

MemorylessStrategy make_witness(const MdpGraph& g, const TargetSet& t,
                                const std::vector<state_id>& winning) {
  const uint32_t n = g.n();
  MemorylessStrategy strat;
  strat.choice.assign(n, MemorylessStrategy::none);
  StateSet win = StateSet::from_range(n, winning);
  StateSet t_in = t.as_set(n) & win;

  // Backward BFS from the surviving targets inside the winning set.
  std::vector<int64_t> dist(n, -1);
  std::deque<state_id> queue;
  t_in.for_each([&](state_id s) {
    dist[s] = 0;
    queue.push_back(s);
  });
  while (!queue.empty()) {
    state_id s = queue.front();
    queue.pop_front();
    for (state_id p : g.graph.pred[s])
      if (win.test(p) && dist[p] < 0) {
        dist[p] = dist[s] + 1;
        queue.push_back(p);
      }
  }

  for (state_id s : winning) {
    if (!g.player1.test(s)) continue;
    if (t_in.test(s) || dist[s] < 0) {
      for (state_id v : g.graph.succ[s])
        if (win.test(v)) {
          strat.choice[s] = v;
          break;
        }
    } else {
      for (state_id v : g.graph.succ[s])
        if (win.test(v) && dist[v] == dist[s] - 1) {
          strat.choice[s] = v;  // shortest-path successor, minimal id
          break;
        }
    }
  }
  return strat;
}

bool check_witness(const MdpGraph& g, const TargetSet& t, const WinningSet& w, std::string* why) {
  const uint32_t n = g.n();
  StateSet win = StateSet::from_range(n, w.states);
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  Digraph restricted;
  restricted.n = n;
  restricted.succ.assign(n, {});
  restricted.pred.assign(n, {});
  for (state_id s : w.states) {
    if (g.player1.test(s)) {
      int64_t c = w.witness.choice[s];
      if (c < 0) return fail("player-1 winning state " + std::to_string(s) + " has no choice");
      auto& succ = g.graph.succ[s];
      if (!std::binary_search(succ.begin(), succ.end(), static_cast<state_id>(c)))
        return fail("choice at " + std::to_string(s) + " is not an edge");
      if (!win.test(static_cast<state_id>(c)))
        return fail("choice at " + std::to_string(s) + " leaves the winning set");
      restricted.succ[s].push_back(static_cast<state_id>(c));
    } else {
      for (state_id v : g.graph.succ[s]) {
        if (!win.test(v))
          return fail("random edge " + std::to_string(s) + "->" + std::to_string(v) +
                      " leaves the winning set");
        restricted.succ[s].push_back(v);
      }
    }
  }
  for (uint32_t s = 0; s < n; ++s)
    for (state_id v : restricted.succ[s]) restricted.pred[v].push_back(s);
  for (auto& l : restricted.pred) std::sort(l.begin(), l.end());

  StateSet reach = explicit_reach_backward(restricted, win, t.as_set(n) & win);
  if (!(win - reach).empty())
    return fail("some winning state cannot reach a target inside the winning set");
  return true;
}

}  // namespace qbuchi
