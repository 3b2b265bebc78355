#include "qbuchi/scc.hpp"

#include <algorithm>
#include <deque>

namespace qbuchi {

std::optional<uint64_t> SccPartition::d_star() const {
  uint64_t sum = 0;
  for (int64_t d : diameter) {
    if (d < 0) return std::nullopt;
    sum += static_cast<uint64_t>(d);
  }
  return sum;
}

std::vector<std::vector<state_id>> SccPartition::canonical() const {
  auto out = sccs;
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace {

void fill_bottom_flags(SccPartition& part, const Digraph& g, const StateSet& live) {
  std::vector<uint32_t> comp(g.n, ~uint32_t{0});
  for (size_t c = 0; c < part.sccs.size(); ++c)
    for (state_id s : part.sccs[c]) comp[s] = static_cast<uint32_t>(c);
  part.is_bottom.assign(part.sccs.size(), true);
  for (size_t c = 0; c < part.sccs.size(); ++c) {
    for (state_id s : part.sccs[c]) {
      for (state_id v : g.succ[s]) {
        if (live.test(v) && comp[v] != c) {
          part.is_bottom[c] = false;
          break;
        }
      }
      if (!part.is_bottom[c]) break;
    }
  }
  part.diameter.assign(part.sccs.size(), -1);
}

}  // namespace

SccPartition scc_explicit(const Digraph& g) {
  return scc_explicit(g, StateSet::full(g.n));
}

SccPartition scc_explicit(const Digraph& g, const StateSet& live) {
  // Iterative Tarjan restricted to the live subgraph.
  constexpr uint32_t kUnset = ~uint32_t{0};
  std::vector<uint32_t> index(g.n, kUnset), lowlink(g.n, 0);
  std::vector<bool> on_stack(g.n, false);
  std::vector<state_id> stack;
  uint32_t next_index = 0;

  SccPartition part;

  struct Frame {
    state_id v;
    size_t edge;
  };
  std::vector<Frame> frames;

  for (uint32_t root = 0; root < g.n; ++root) {
    if (!live.test(root) || index[root] != kUnset) continue;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!frames.empty()) {
      Frame& fr = frames.back();
      state_id v = fr.v;
      if (fr.edge < g.succ[v].size()) {
        state_id w = g.succ[v][fr.edge++];
        if (!live.test(w)) continue;
        if (index[w] == kUnset) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
      } else {
        frames.pop_back();
        if (!frames.empty())
          lowlink[frames.back().v] = std::min(lowlink[frames.back().v], lowlink[v]);
        if (lowlink[v] == index[v]) {
          std::vector<state_id> comp;
          for (;;) {
            state_id w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          part.sccs.push_back(std::move(comp));
        }
      }
    }
  }

  std::sort(part.sccs.begin(), part.sccs.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  fill_bottom_flags(part, g, live);
  return part;
}

namespace {

void note_spine_insert(SccStats* stats, state_id s, uint32_t n) {
  if (!stats) return;
  if (stats->spine_insertions.size() < n) stats->spine_insertions.resize(n, 0);
  ++stats->spine_insertions[s];
}

SkelFwdResult skel_fwd_impl(const Digraph& g, const StateSet& live, const StateSet* q,
                            state_id s, SymbolicEngine& eng, SccStats* stats) {
  SkelFwdResult r;
  std::vector<StateSet> stack;
  r.fw_set = StateSet(g.n);
  StateSet layer = StateSet::singleton(g.n, s);
  while (!layer.empty()) {
    stack.push_back(layer);
    r.fw_set |= layer;
    layer = (eng.post(layer) & live) - r.fw_set;
  }

  r.p = StateSet(g.n);
  if (q) r.p = r.fw_set & *q;

  layer = stack.back();
  stack.pop_back();
  state_id seed = layer.first();
  r.new_set = StateSet::singleton(g.n, seed);
  r.new_state = seed;
  // Only the extension loop is instrumented: these are the insertions the
  // charging argument pays a pre for (the seed pick above is free).
  while (!stack.empty()) {
    layer = stack.back();
    stack.pop_back();
    state_id next = (eng.pre(r.new_set) & layer).first();
    // Every layer state has a predecessor in the layer below, so the pick
    // cannot come up empty on a well-formed graph.
    if (next == StateSet::npos) break;
    // Early break on the picked node: a pick that lands in P is already in a
    // spine, and everything the truncation omits below it belongs to the
    // component of the search root.
    if (q && r.p.test(next)) break;
    if (!r.new_set.test(next)) {
      r.new_set.set(next);
      note_spine_insert(stats, next, g.n);
    }
  }
  return r;
}

}  // namespace

SkelFwdResult skel_fwd(const Digraph& g, const StateSet& live, state_id s, SymbolicEngine& eng,
                       SccStats* stats) {
  return skel_fwd_impl(g, live, nullptr, s, eng, stats);
}

SkelFwdResult improved_skel_fwd(const Digraph& g, const StateSet& live, const StateSet& q,
                                state_id s, SymbolicEngine& eng, SccStats* stats) {
  return skel_fwd_impl(g, live, &q, s, eng, stats);
}

namespace {

SccPartition spine_scc(const Digraph& g, const StateSet& live, SymbolicEngine& eng,
                       bool improved, SccStats* stats) {
  SccPartition part;
  if (stats) stats->spine_insertions.assign(g.n, 0);

  struct Call {
    StateSet v;
    StateSet u;
    state_id s;
  };
  std::vector<Call> work;
  work.push_back({live, StateSet(g.n), StateSet::npos});

  while (!work.empty()) {
    Call call = std::move(work.back());
    work.pop_back();
    if (call.v.empty()) continue;

    state_id s = call.u.empty() ? call.v.first() : call.s;
    SkelFwdResult skel = improved ? improved_skel_fwd(g, call.v, call.u, s, eng, stats)
                                  : skel_fwd(g, call.v, s, eng, stats);

    StateSet scc = improved ? (skel.p | StateSet::singleton(g.n, s))
                            : StateSet::singleton(g.n, s);
    // An image is skipped when free set algebra already proves it cannot
    // grow the closure: (pre(SCC) cap FWSet) \ SCC is a subset of
    // FWSet \ SCC, so an empty remainder ends the loop without a step.
    while (!(skel.fw_set - scc).empty()) {
      StateSet next = scc | (eng.pre(scc) & skel.fw_set);
      if (next == scc) break;
      scc = std::move(next);
    }
    part.sccs.push_back(scc.to_ids());

    // Next spine end for the V \ FWSet branch: the spine predecessor of the
    // component's spine segment. With the whole spine inside the component
    // the result is empty without an image.
    StateSet rest_spine = call.u - scc;
    state_id s1 = StateSet::npos;
    if (!rest_spine.empty()) s1 = (eng.pre(scc & call.u) & rest_spine).first();

    Call rest{call.v - skel.fw_set, std::move(rest_spine), s1};
    StateSet u2 = skel.new_set - scc;
    state_id s2 = scc.test(skel.new_state) ? StateSet::npos : skel.new_state;
    Call inner{skel.fw_set - scc, std::move(u2), s2};

    // LIFO: process the V \ FWSet branch first, matching the recursion order.
    work.push_back(std::move(inner));
    work.push_back(std::move(rest));
  }

  fill_bottom_flags(part, g, live);
  return part;
}

}  // namespace

SccPartition scc_find(const Digraph& g, SymbolicEngine& eng, SccStats* stats) {
  return spine_scc(g, StateSet::full(g.n), eng, false, stats);
}
SccPartition scc_find(const Digraph& g, const StateSet& live, SymbolicEngine& eng,
                      SccStats* stats) {
  return spine_scc(g, live, eng, false, stats);
}

SccPartition improved_scc_find(const Digraph& g, SymbolicEngine& eng, SccStats* stats) {
  return spine_scc(g, StateSet::full(g.n), eng, true, stats);
}
SccPartition improved_scc_find(const Digraph& g, const StateSet& live, SymbolicEngine& eng,
                               SccStats* stats) {
  return spine_scc(g, live, eng, true, stats);
}

void scc_diameters(SccPartition& part, const Digraph& g, uint32_t cap) {
  part.diameter.assign(part.sccs.size(), -1);
  std::vector<uint32_t> comp(g.n, ~uint32_t{0});
  for (size_t c = 0; c < part.sccs.size(); ++c)
    for (state_id s : part.sccs[c]) comp[s] = static_cast<uint32_t>(c);

  std::vector<int32_t> dist(g.n, -1);
  for (size_t c = 0; c < part.sccs.size(); ++c) {
    const auto& members = part.sccs[c];
    if (members.size() > cap) continue;
    int64_t diam = 0;
    for (state_id src : members) {
      for (state_id u : members) dist[u] = -1;
      std::deque<state_id> queue{src};
      dist[src] = 0;
      while (!queue.empty()) {
        state_id u = queue.front();
        queue.pop_front();
        for (state_id v : g.succ[u]) {
          if (comp[v] != c || dist[v] >= 0) continue;
          dist[v] = dist[u] + 1;
          if (dist[v] > diam) diam = dist[v];
          queue.push_back(v);
        }
      }
    }
    part.diameter[c] = diam;
  }
}

std::vector<size_t> bottom_up_order(const SccPartition& part, const Digraph& g) {
  std::vector<uint32_t> comp(g.n, ~uint32_t{0});
  for (size_t c = 0; c < part.sccs.size(); ++c)
    for (state_id s : part.sccs[c]) comp[s] = static_cast<uint32_t>(c);

  size_t k = part.sccs.size();
  std::vector<uint32_t> level(k, 0);
  // Components emitted by scc_explicit are sorted by min id, not
  // topologically; compute levels by relaxation over the condensation.
  std::vector<std::vector<uint32_t>> succ_comps(k);
  for (uint32_t u = 0; u < g.n; ++u) {
    if (comp[u] == ~uint32_t{0}) continue;
    for (state_id v : g.succ[u])
      if (comp[v] != ~uint32_t{0} && comp[v] != comp[u]) succ_comps[comp[u]].push_back(comp[v]);
  }
  for (auto& l : succ_comps) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }

  // Longest path to a bottom component, by processing in reverse topological
  // order (Kahn over the reversed condensation).
  std::vector<uint32_t> out_deg(k, 0);
  std::vector<std::vector<uint32_t>> pred_comps(k);
  for (uint32_t c = 0; c < k; ++c)
    for (uint32_t d : succ_comps[c]) {
      ++out_deg[c];
      pred_comps[d].push_back(c);
    }
  std::deque<uint32_t> queue;
  for (uint32_t c = 0; c < k; ++c)
    if (out_deg[c] == 0) queue.push_back(c);
  while (!queue.empty()) {
    uint32_t c = queue.front();
    queue.pop_front();
    for (uint32_t p : pred_comps[c]) {
      level[p] = std::max(level[p], level[c] + 1);
      if (--out_deg[p] == 0) queue.push_back(p);
    }
  }

  std::vector<size_t> order(k);
  for (size_t i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (level[a] != level[b]) return level[a] < level[b];
    return part.sccs[a].front() < part.sccs[b].front();
  });
  return order;
}

}  // namespace qbuchi
