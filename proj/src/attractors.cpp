#include "qbuchi/attractors.hpp"

#include <deque>

namespace qbuchi {

StateSet reach_backward(const StateSet& live, const StateSet& t, SymbolicEngine& eng) {
  StateSet x = t;
  for (;;) {
    StateSet next = x | (eng.pre(x) & live);
    if (next == x) return x;
    x = std::move(next);
  }
}

StateSet attr_random(const StateSet& live, const StateSet& u, SymbolicEngine& eng) {
  StateSet x = u;
  for (;;) {
    StateSet next = x | (eng.cpre(x) & live);
    if (next == x) return x;
    x = std::move(next);
  }
}

StateSet attr_player1(const StateSet& live, const StateSet& u, SymbolicEngine& eng) {
  StateSet x = u;
  for (;;) {
    StateSet next = x | (eng.cpre1(x) & live);
    if (next == x) return x;
    x = std::move(next);
  }
}

StateSet explicit_reach_backward(const Digraph& g, const StateSet& live, const StateSet& t) {
  StateSet seen(g.n);
  std::deque<state_id> queue;
  t.for_each([&](state_id s) {
    if (live.test(s)) {
      seen.set(s);
      queue.push_back(s);
    }
  });
  while (!queue.empty()) {
    state_id s = queue.front();
    queue.pop_front();
    for (state_id p : g.pred[s])
      if (live.test(p) && !seen.test(p)) {
        seen.set(p);
        queue.push_back(p);
      }
  }
  return seen;
}

namespace {

// Worklist attractor: the existential owner joins on one edge into the set,
// the universal owner once all its successors are in. Each state is popped
// once and decrements its predecessors' missing counters, so `missing[p]`
// reaching zero is exactly E(p) subseteq X. Only live states are absorbed;
// `u` may contain states outside live (the solvers seed the fixpoint with
// the accumulated removed set).
StateSet explicit_attr(const MdpGraph& g, const StateSet& live, const StateSet& u,
                       bool universal_p1) {
  const Digraph& d = g.graph;
  StateSet x = u;
  std::deque<state_id> queue;
  u.for_each([&](state_id s) { queue.push_back(s); });

  std::vector<uint32_t> missing(d.n);
  for (uint32_t s = 0; s < d.n; ++s) missing[s] = static_cast<uint32_t>(d.succ[s].size());

  while (!queue.empty()) {
    state_id s = queue.front();
    queue.pop_front();
    for (state_id p : d.pred[s]) {
      --missing[p];
      if (!live.test(p) || x.test(p)) continue;
      bool universal = (g.is_player1(p) == universal_p1);
      if (!universal || missing[p] == 0) {
        x.set(p);
        queue.push_back(p);
      }
    }
  }
  return x;
}

}  // namespace

StateSet explicit_attr_random(const MdpGraph& g, const StateSet& live, const StateSet& u) {
  return explicit_attr(g, live, u, /*universal_p1=*/true);
}

StateSet explicit_attr_player1(const MdpGraph& g, const StateSet& live, const StateSet& u) {
  return explicit_attr(g, live, u, /*universal_p1=*/false);
}

namespace {

struct DfsState {
  state_id source;
  bool active = true;
  StateSet visited;
  // DFS stack of (state, index into succ list).
  std::vector<std::pair<state_id, size_t>> stack;
};

}  // namespace

LockstepOutcome lockstep_dfs_explicit(const Digraph& g, const StateSet& live,
                                      const std::vector<state_id>& sources,
                                      const StateSet& stop) {
  std::vector<DfsState> dfs;
  dfs.reserve(sources.size());
  for (state_id s : sources) {
    DfsState d;
    d.source = s;
    d.visited = StateSet(g.n);
    d.visited.set(s);
    if (stop.test(s)) {
      d.active = false;  // source already in stop
    } else {
      d.stack.push_back({s, 0});
      // A source without live successors is an immediate trap.
      bool has_live_succ = false;
      for (state_id v : g.succ[s])
        if (live.test(v)) {
          has_live_succ = true;
          break;
        }
      if (!has_live_succ) {
        LockstepOutcome out;
        out.trap_found = true;
        out.trap_source = s;
        out.trap = d.visited;
        out.progress.push_back({s, 1, false});
        return out;
      }
    }
    dfs.push_back(std::move(d));
  }

  LockstepOutcome out;
  for (;;) {
    bool any_active = false;
    for (auto& d : dfs) {
      if (!d.active) continue;
      any_active = true;
      // Advance exactly one edge: find the next live edge from the top of
      // the stack, popping exhausted states for free.
      bool advanced = false;
      while (!d.stack.empty() && !advanced) {
        auto& [s, idx] = d.stack.back();
        while (idx < g.succ[s].size() && !live.test(g.succ[s][idx])) ++idx;
        if (idx >= g.succ[s].size()) {
          d.stack.pop_back();
          continue;
        }
        state_id v = g.succ[s][idx++];
        advanced = true;
        if (!d.visited.test(v)) {
          d.visited.set(v);
          if (stop.test(v)) {
            d.active = false;
            break;
          }
          d.stack.push_back({v, 0});
        }
      }
      if (d.active && advanced) {
        // Drain exhausted frames so completion is detected this round.
        while (!d.stack.empty()) {
          auto& [s, idx] = d.stack.back();
          while (idx < g.succ[s].size() && !live.test(g.succ[s][idx])) ++idx;
          if (idx >= g.succ[s].size())
            d.stack.pop_back();
          else
            break;
        }
      }
      if (d.active && d.stack.empty()) {
        out.trap_found = true;
        out.trap_source = d.source;
        out.trap = d.visited;
        for (const auto& e : dfs) out.progress.push_back({e.source, e.visited.count(), !e.active});
        return out;
      }
    }
    if (!any_active) {
      for (const auto& e : dfs) out.progress.push_back({e.source, e.visited.count(), true});
      return out;  // all reached the stop set
    }
    ++out.rounds;
  }
}

namespace {

struct Frontier {
  state_id source;
  bool active = true;
  StateSet set;
};

}  // namespace

LockstepOutcome lockstep_forward_symbolic(const StateSet& live,
                                          const std::vector<state_id>& sources,
                                          const StateSet& stop, SymbolicEngine& eng) {
  std::vector<Frontier> fronts;
  fronts.reserve(sources.size());
  for (state_id s : sources)
    fronts.push_back({s, true, StateSet::singleton(live.universe(), s)});

  LockstepOutcome out;
  for (;;) {
    bool any_active = false;
    for (auto& f : fronts) {
      if (!f.active) continue;
      if (f.set.intersects(stop)) {
        f.active = false;
        continue;
      }
      any_active = true;
      StateSet next = f.set | (eng.post(f.set) & live);
      if (next == f.set) {
        out.trap_found = true;
        out.trap_source = f.source;
        out.trap = f.set;
        for (const auto& e : fronts) out.progress.push_back({e.source, e.set.count(), !e.active});
        return out;
      }
      f.set = std::move(next);
    }
    if (!any_active) {
      for (const auto& e : fronts) out.progress.push_back({e.source, e.set.count(), true});
      return out;
    }
    ++out.rounds;
  }
}

}  // namespace qbuchi
