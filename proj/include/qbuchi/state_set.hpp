#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace qbuchi {

using state_id = uint32_t;

/// Word-packed set of state ids over a fixed universe 0..n-1.
///
/// Plain value type: set algebra here is "free" under the symbolic cost
/// model; only image operators (SymbolicEngine) are ledgered.
class StateSet {
 public:
  StateSet() = default;
  explicit StateSet(uint32_t universe)
      : n_(universe), words_((universe + 63) / 64, 0) {}

  static StateSet full(uint32_t universe) {
    StateSet s(universe);
    for (auto& w : s.words_) w = ~uint64_t{0};
    s.clear_tail();
    return s;
  }

  static StateSet from_ids(uint32_t universe, std::initializer_list<state_id> ids) {
    StateSet s(universe);
    for (state_id id : ids) s.set(id);
    return s;
  }

  template <class Container>
  static StateSet from_range(uint32_t universe, const Container& ids) {
    StateSet s(universe);
    for (state_id id : ids) s.set(id);
    return s;
  }

  static StateSet singleton(uint32_t universe, state_id id) {
    StateSet s(universe);
    s.set(id);
    return s;
  }

  uint32_t universe() const { return n_; }

  bool test(state_id id) const { return (words_[id >> 6] >> (id & 63)) & 1; }
  void set(state_id id) {
    if (id >= n_) throw std::out_of_range("StateSet::set: id out of universe");
    words_[id >> 6] |= uint64_t{1} << (id & 63);
  }
  void reset(state_id id) { words_[id >> 6] &= ~(uint64_t{1} << (id & 63)); }

  bool empty() const {
    for (uint64_t w : words_)
      if (w) return false;
    return true;
  }

  uint32_t count() const {
    uint32_t c = 0;
    for (uint64_t w : words_) c += static_cast<uint32_t>(__builtin_popcountll(w));
    return c;
  }

  static constexpr state_id npos = ~state_id{0};

  /// Smallest member, or npos when empty. Used as the deterministic pick().
  state_id first() const {
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<state_id>(i * 64 + __builtin_ctzll(words_[i]));
    return npos;
  }

  StateSet& operator|=(const StateSet& o) {
    check(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  StateSet& operator&=(const StateSet& o) {
    check(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  /// Set difference.
  StateSet& operator-=(const StateSet& o) {
    check(o);
    for (size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  friend StateSet operator|(StateSet a, const StateSet& b) { return a |= b; }
  friend StateSet operator&(StateSet a, const StateSet& b) { return a &= b; }
  friend StateSet operator-(StateSet a, const StateSet& b) { return a -= b; }

  StateSet complement() const {
    StateSet r(n_);
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
    r.clear_tail();
    return r;
  }

  bool operator==(const StateSet& o) const {
    check(o);
    return words_ == o.words_;
  }
  bool operator!=(const StateSet& o) const { return !(*this == o); }

  bool is_subset_of(const StateSet& o) const {
    check(o);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  bool intersects(const StateSet& o) const {
    check(o);
    for (size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  std::vector<state_id> to_ids() const {
    std::vector<state_id> out;
    out.reserve(count());
    for_each([&](state_id s) { out.push_back(s); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (size_t i = 0; i < words_.size(); ++i) {
      uint64_t w = words_[i];
      while (w) {
        state_id s = static_cast<state_id>(i * 64 + __builtin_ctzll(w));
        fn(s);
        w &= w - 1;
      }
    }
  }

 private:
  void check(const StateSet& o) const {
    if (n_ != o.n_) throw std::invalid_argument("StateSet: universe mismatch");
  }
  void clear_tail() {
    if (n_ % 64 != 0 && !words_.empty())
      words_.back() &= (uint64_t{1} << (n_ % 64)) - 1;
  }

  uint32_t n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace qbuchi
