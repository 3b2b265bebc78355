#include "qbuchi/engine.hpp"

#include <stdexcept>

namespace qbuchi {

void SymbolicEngine::check(const StateSet& x) const {
  if (x.universe() != universe_) throw std::invalid_argument("engine: universe mismatch");
}

void SymbolicEngine::note_result(const StateSet& r) {
  uint64_t c = r.count();
  if (c > ledger_.peak_live_sets) ledger_.peak_live_sets = c;
}

StateSet SymbolicEngine::pre(const StateSet& x) {
  check(x);
  ++ledger_.pre_steps;
  if (log_ops_) op_log_.push_back(ImageOp::Pre);
  StateSet r = pre_impl(x);
  note_result(r);
  return r;
}

StateSet SymbolicEngine::post(const StateSet& x) {
  check(x);
  ++ledger_.post_steps;
  if (log_ops_) op_log_.push_back(ImageOp::Post);
  StateSet r = post_impl(x);
  note_result(r);
  return r;
}

StateSet SymbolicEngine::cpre(const StateSet& x) {
  check(x);
  ++ledger_.cpre_steps;
  if (log_ops_) op_log_.push_back(ImageOp::CPre);
  StateSet r = cpre_impl(x);
  note_result(r);
  return r;
}

StateSet SymbolicEngine::cpre1(const StateSet& x) {
  check(x);
  ++ledger_.cpre1_steps;
  if (log_ops_) op_log_.push_back(ImageOp::CPre1);
  StateSet r = cpre1_impl(x);
  note_result(r);
  return r;
}

CardinalityVerdict SymbolicEngine::count_at_most(const StateSet& x, uint64_t k) {
  check(x);
  uint64_t units = 0;
  uint64_t c = count_impl(x, k, units);
  ledger_.cardinality_ops += units;
  if (c <= k) return CardinalityVerdict::exact_of(c);
  return CardinalityVerdict::more_than(k);
}

namespace {

class BitsetEngine final : public SymbolicEngine {
 public:
  BitsetEngine(const Digraph& g, const StateSet* player1)
      : SymbolicEngine(g.n), g_(g) {
    if (player1) owner_ = *player1;
    stamp_.assign(g.n, 0);
  }

 protected:
  StateSet pre_impl(const StateSet& x) override {
    StateSet r(g_.n);
    x.for_each([&](state_id t) {
      for (state_id p : g_.pred[t]) r.set(p);
    });
    return r;
  }

  StateSet post_impl(const StateSet& x) override {
    StateSet r(g_.n);
    x.for_each([&](state_id s) {
      for (state_id t : g_.succ[s]) r.set(t);
    });
    return r;
  }

  StateSet cpre_impl(const StateSet& x) override { return controlled_pre(x, /*universal_p1=*/true); }
  StateSet cpre1_impl(const StateSet& x) override { return controlled_pre(x, /*universal_p1=*/false); }

  uint64_t count_impl(const StateSet& x, uint64_t k, uint64_t& units) override {
    // Emulation of budgeted cube enumeration: members are enumerated in id
    // order with early stop once the budget is exceeded.
    uint64_t c = 0;
    units = 0;
    for (uint32_t s = 0; s < g_.n; ++s) {
      if (!x.test(s)) continue;
      ++units;
      ++c;
      if (c > k) break;
    }
    return c;
  }

 private:
  // Predecessors of x where one owner class needs an edge into x and the
  // other needs all edges inside x. universal_p1 selects which class gets
  // the universal condition (true for cpre, false for cpre1).
  StateSet controlled_pre(const StateSet& x, bool universal_p1) {
    if (owner_.universe() != g_.n)
      throw std::logic_error("cpre/cpre1 require an owner partition");
    StateSet r(g_.n);
    ++epoch_;
    x.for_each([&](state_id t) {
      for (state_id p : g_.pred[t]) {
        if (stamp_[p] == epoch_) continue;
        stamp_[p] = epoch_;
        bool p1 = owner_.test(p);
        bool universal = (p1 == universal_p1);
        if (!universal) {
          r.set(p);  // existential side: one edge into x suffices
        } else {
          bool all_in = true;
          for (state_id v : g_.succ[p])
            if (!x.test(v)) {
              all_in = false;
              break;
            }
          if (all_in) r.set(p);
        }
      }
    });
    return r;
  }

  const Digraph& g_;
  StateSet owner_;
  std::vector<uint64_t> stamp_;
  uint64_t epoch_ = 0;
};

}  // namespace

std::unique_ptr<SymbolicEngine> make_engine(const Digraph& g, const StateSet* player1) {
  return std::make_unique<BitsetEngine>(g, player1);
}

std::unique_ptr<SymbolicEngine> make_engine(const MdpGraph& g) {
  return std::make_unique<BitsetEngine>(g.graph, &g.player1);
}

}  // namespace qbuchi
