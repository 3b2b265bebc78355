#include "qbuchi/buchi_symbolic.hpp"

#include <cmath>
#include <stdexcept>

#include "qbuchi/attractors.hpp"
#include "qbuchi/scc.hpp"

namespace qbuchi {

namespace {

uint64_t sqrt_threshold(uint64_t m) {
  return static_cast<uint64_t>(std::ceil(std::sqrt(static_cast<double>(m))));
}

}  // namespace

SymbolicSolveReport symb_classical(const MdpGraph& g, const TargetSet& t, SymbolicEngine& eng) {
  eng.reset_ledger();
  const uint32_t n = g.n();
  StateSet t_all = t.as_set(n);
  StateSet live = StateSet::full(n);
  StateSet dead(n);
  SymbolicSolveReport rep;

  for (;;) {
    StateSet y = reach_backward(live, t_all & live, eng);
    StateSet q = live - y;
    rep.trace.push_back({1, live.count(), 0});
    if (q.empty()) break;
    StateSet closed = attr_random(live, q | dead, eng);
    StateSet removed = closed & live;
    rep.trace.back().removed = removed.count();
    live -= removed;
    dead = std::move(closed);
  }
  rep.winning = live;
  rep.ledger = eng.ledger();
  return rep;
}

SymbolicSolveReport symb_impr_algo(const MdpGraph& g, const TargetSet& t, SymbolicEngine& eng) {
  eng.reset_ledger();
  const uint32_t n = g.n();
  const uint64_t k = sqrt_threshold(g.m());
  StateSet t_all = t.as_set(n);
  StateSet live = StateSet::full(n);
  StateSet dead(n), l_since_case1(n), j(n);
  SymbolicSolveReport rep;
  uint64_t i = 0;

  for (;;) {
    bool case1 = (i == 0) || !eng.count_at_most(j, k).exact;
    StateSet q(n);
    if (case1) {
      StateSet y = reach_backward(live, t_all & live, eng);
      q = live - y;
      rep.trace.push_back({1, live.count(), 0});
      if (q.empty()) break;
    } else {
      rep.trace.push_back({2, live.count(), 0});
      auto out = lockstep_forward_symbolic(live, j.to_ids(), t_all & live, eng);
      if (!out.trap_found) break;
      q = out.trap;
    }

    StateSet closed = attr_random(live, q | dead, eng);
    StateSet removed = closed & live;
    rep.trace.back().removed = removed.count();
    live -= removed;
    dead = std::move(closed);
    if (case1)
      l_since_case1 = removed;
    else
      l_since_case1 |= removed;
    j = eng.pre(l_since_case1) & live;
    ++i;
  }
  rep.winning = live;
  rep.ledger = eng.ledger();
  return rep;
}

SymbolicSolveReport smdv_symb_impr_algo(const MdpGraph& g, const TargetSet& t,
                                        SymbolicEngine& eng) {
  eng.reset_ledger();
  const uint32_t n = g.n();
  const uint64_t k = sqrt_threshold(g.m());
  StateSet t_all = t.as_set(n);
  StateSet live = StateSet::full(n);
  StateSet dead(n), l_since_case1(n), j(n);
  // Backward reach set for the dovetailed Case 2. It persists across
  // consecutive Case-2 iterations and is rebuilt from the live targets after
  // a Case-1 execution or after a removal that deleted one of its states
  // (staleness would make frontier deactivation unsound).
  StateSet u(n);
  bool u_needs_init = true;
  SymbolicSolveReport rep;
  uint64_t i = 0;
  bool done = false;

  struct Frontier {
    state_id src;
    StateSet set;
    bool active = true;
  };

  while (!done) {
    bool case1 = (i == 0) || !eng.count_at_most(j, k).exact;
    StateSet q(n);
    bool removal = false;

    if (case1) {
      StateSet y = reach_backward(live, t_all & live, eng);
      q = live - y;
      rep.trace.push_back({1, live.count(), 0});
      u_needs_init = true;
      if (q.empty()) break;
      removal = true;
    } else {
      rep.trace.push_back({2, live.count(), 0});
      if (u_needs_init) {
        u = t_all & live;
        u_needs_init = false;
      }
      std::vector<Frontier> fronts;
      for (state_id s : j.to_ids()) fronts.push_back({s, StateSet::singleton(n, s)});

      bool round_progress = true;
      while (!removal && !done && round_progress) {
        round_progress = false;
        for (auto& f : fronts) {
          if (!f.active) continue;
          if (f.set.intersects(u)) {
            f.active = false;
            continue;
          }
          round_progress = true;
          StateSet p_next = f.set | (eng.post(f.set) & live);
          StateSet u_next = u | (eng.pre(u) & live);
          bool p_fixed = (p_next == f.set);
          bool u_fixed = (u_next == u);
          f.set = std::move(p_next);
          u = std::move(u_next);
          if (u_fixed) {
            // U is the full backward closure of the live targets.
            q = live - u;
            if (q.empty())
              done = true;  // every live state reaches the targets
            else
              removal = true;
            break;
          }
          if (p_fixed && !f.set.intersects(u)) {
            q = f.set;
            removal = true;
            break;
          }
        }
      }
      if (!removal && !done) done = true;  // all frontiers met U
    }

    if (done || !removal) break;

    StateSet closed = attr_random(live, q | dead, eng);
    StateSet removed = closed & live;
    rep.trace.back().removed = removed.count();
    if (removed.intersects(u)) u_needs_init = true;
    live -= removed;
    dead = std::move(closed);
    if (case1)
      l_since_case1 = removed;
    else
      l_since_case1 |= removed;
    j = eng.pre(l_since_case1) & live;
    ++i;
  }
  rep.winning = live;
  rep.ledger = eng.ledger();
  return rep;
}

namespace {

// Lockstep forward/backward search from every source until the first source s
// certifies that its forward set is a bottom component: FW(s) stable under
// post within live, and every state of it reaches s inside it (B == F).
struct BottomSccSearch {
  StateSet component;
  state_id source;
};

BottomSccSearch symb_bottom_scc(const StateSet& live, const std::vector<state_id>& sources,
                                SymbolicEngine& eng) {
  struct Search {
    state_id src;
    StateSet f, b;
    bool f_stable = false;
    bool active = true;
  };
  const uint32_t n = live.universe();
  std::vector<Search> searches;
  for (state_id s : sources)
    searches.push_back({s, StateSet::singleton(n, s), StateSet::singleton(n, s)});

  for (;;) {
    bool any_active = false;
    for (auto& s : searches) {
      if (!s.active) continue;
      any_active = true;
      if (!s.f_stable) {
        StateSet fg = eng.post(s.f) & live;
        if (fg.is_subset_of(s.f))
          s.f_stable = true;
        else
          s.f |= fg;
      }
      if (s.f_stable && s.b == s.f) return {s.f, s.src};
      StateSet bg = eng.pre(s.b) & s.f;
      if (bg.is_subset_of(s.b)) {
        // Backward fixpoint: with F stable and B a proper subset, F is not
        // strongly connected, so this source can never certify.
        if (s.f_stable) s.active = false;
      } else {
        s.b |= bg;
        if (s.f_stable && s.b == s.f) return {s.f, s.src};
      }
    }
    if (!any_active)
      throw std::logic_error("symb_bottom_scc: no source certified a bottom component");
  }
}

}  // namespace

SymbolicSolveReport symb_impr_win_lose(const MdpGraph& g, const TargetSet& t,
                                       SymbolicEngine& eng, VerdictStream& stream) {
  eng.reset_ledger();
  const uint32_t n = g.n();
  const uint64_t k = sqrt_threshold(g.m());
  StateSet t_all = t.as_set(n);
  StateSet live = StateSet::full(n);
  StateSet w1(n), w2(n), l_since_case1(n), j(n);
  SymbolicSolveReport rep;
  uint32_t i = 0;

  while (!live.empty()) {
    std::vector<StateSet> bottoms;
    bool case1 = (i == 0) || j.empty() || !eng.count_at_most(j, k).exact;
    if (case1) {
      rep.trace.push_back({1, live.count(), 0});
      SccPartition part = improved_scc_find(g.graph, live, eng);
      for (size_t c = 0; c < part.count(); ++c)
        if (part.is_bottom[c]) bottoms.push_back(StateSet::from_range(n, part.sccs[c]));
    } else {
      rep.trace.push_back({2, live.count(), 0});
      auto found = symb_bottom_scc(live, j.to_ids(), eng);
      bottoms.push_back(std::move(found.component));
    }

    // Classification against the pre-closure W1, via one Pre image.
    StateSet pre_w1 = w1.empty() ? StateSet(n) : eng.pre(w1);
    StateSet pend_w(n), pend_l(n);
    for (const auto& c : bottoms) {
      if (c.intersects(t_all) || c.intersects(pre_w1))
        pend_w |= c;
      else
        pend_l |= c;
    }

    StateSet w1_new = attr_player1(live, w1 | pend_w, eng);
    StateSet win_inc = w1_new - w1;
    live -= win_inc;
    StateSet w2_new = attr_random(live, w2 | pend_l, eng);
    StateSet lose_inc = w2_new - w2;
    live -= lose_inc;

    if (!win_inc.empty()) stream.events.push_back({i, Verdict::Win, win_inc.to_ids()});
    if (!lose_inc.empty()) stream.events.push_back({i, Verdict::Lose, lose_inc.to_ids()});

    StateSet removed = win_inc | lose_inc;
    rep.trace.back().removed = removed.count();
    if (case1)
      l_since_case1 = removed;
    else
      l_since_case1 |= removed;
    j = eng.pre(l_since_case1) & live;
    w1 = std::move(w1_new);
    w2 = std::move(w2_new);
    ++i;
  }

  rep.winning = std::move(w1);
  rep.ledger = eng.ledger();
  return rep;
}

}  // namespace qbuchi
