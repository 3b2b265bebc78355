#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "qbuchi/mdp.hpp"
#include "qbuchi/state_set.hpp"

namespace qbuchi {

/// Exact symbolic-step accounting. Every invocation of an image operator
/// (pre/post/cpre/cpre1) costs exactly one step, including the final
/// invocation that confirms a fixpoint. Set algebra is free. Cardinality
/// probes are tracked separately; they act on log(n)-variable sets and are
/// cheaper than image computations.
struct StepLedger {
  uint64_t pre_steps = 0;
  uint64_t post_steps = 0;
  uint64_t cpre_steps = 0;
  uint64_t cpre1_steps = 0;
  uint64_t cardinality_ops = 0;
  uint64_t peak_live_sets = 0;  // diagnostics: largest image-result popcount seen

  uint64_t image_steps() const { return pre_steps + post_steps + cpre_steps + cpre1_steps; }
  void reset() { *this = StepLedger{}; }

  bool operator==(const StepLedger&) const = default;
};

struct CardinalityVerdict {
  bool exact;       // true: Exact(value); false: MoreThan(value)
  uint64_t value;   // count when exact, budget when not

  static CardinalityVerdict exact_of(uint64_t c) { return {true, c}; }
  static CardinalityVerdict more_than(uint64_t k) { return {false, k}; }
  bool operator==(const CardinalityVerdict&) const = default;
};

enum class ImageOp : uint8_t { Pre, Post, CPre, CPre1 };

/// Set-of-states engine exposing the image operators over a fixed graph,
/// with the step ledger maintained here so every backend shares identical
/// step semantics (steps count invocations, not internal work).
class SymbolicEngine {
 public:
  virtual ~SymbolicEngine() = default;

  StateSet pre(const StateSet& x);
  StateSet post(const StateSet& x);
  /// One-step operator of the random attractor:
  /// {s in SP | E(s) cap X != empty} cup {s in S1 | E(s) subseteq X}.
  StateSet cpre(const StateSet& x);
  /// Dual of cpre with the owner roles exchanged.
  StateSet cpre1(const StateSet& x);

  /// Exact(|X|) when |X| <= k, else MoreThan(k). Consumes at most
  /// min(k+1, enumeration size) enumeration units, logged as cardinality_ops.
  CardinalityVerdict count_at_most(const StateSet& x, uint64_t k);

  uint32_t universe() const { return universe_; }
  const StepLedger& ledger() const { return ledger_; }
  void reset_ledger() {
    ledger_.reset();
    op_log_.clear();
  }

  /// When enabled, records one entry per image invocation (for trace-replay
  /// checks of the step accounting).
  void enable_op_log(bool on) { log_ops_ = on; }
  const std::vector<ImageOp>& op_log() const { return op_log_; }

 protected:
  explicit SymbolicEngine(uint32_t universe) : universe_(universe) {}

  virtual StateSet pre_impl(const StateSet& x) = 0;
  virtual StateSet post_impl(const StateSet& x) = 0;
  virtual StateSet cpre_impl(const StateSet& x) = 0;
  virtual StateSet cpre1_impl(const StateSet& x) = 0;
  // Returns the member count if <= k, else k+1; sets `units` to the
  // enumeration units consumed.
  virtual uint64_t count_impl(const StateSet& x, uint64_t k, uint64_t& units) = 0;

 private:
  void check(const StateSet& x) const;
  void note_result(const StateSet& r);

  uint32_t universe_;
  StepLedger ledger_;
  bool log_ops_ = false;
  std::vector<ImageOp> op_log_;
};

/// Default backend: explicit word-packed set emulation with image operators
/// implemented by adjacency scans. A decision-diagram backend can slot in
/// behind the same interface without changing the step semantics.
std::unique_ptr<SymbolicEngine> make_engine(const Digraph& g, const StateSet* player1 = nullptr);
std::unique_ptr<SymbolicEngine> make_engine(const MdpGraph& g);

}  // namespace qbuchi
