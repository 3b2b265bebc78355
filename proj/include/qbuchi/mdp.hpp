#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbuchi/state_set.hpp"

namespace qbuchi {

/// Directed graph with dense integer state ids and both adjacency
/// directions. Successor/predecessor lists are kept sorted; pred is the
/// exact transpose of succ.
struct Digraph {
  uint32_t n = 0;
  uint64_t m = 0;
  std::vector<std::vector<state_id>> succ;
  std::vector<std::vector<state_id>> pred;

  static Digraph from_edges(uint32_t n, const std::vector<std::pair<state_id, state_id>>& edges);
};

struct TargetSet {
  std::vector<state_id> ids;  // sorted, unique

  bool contains(state_id s) const;
  StateSet as_set(uint32_t universe) const { return StateSet::from_range(universe, ids); }
};

/// Pure memoryless strategy: one chosen successor per player-1 state.
struct MemorylessStrategy {
  static constexpr int64_t none = -1;
  std::vector<int64_t> choice;  // indexed by state; `none` for random states
};

/// MDP graph G = ((S,E),(S1,SP),delta). Probabilities are parsed and
/// validated but never consumed by the solvers; they only follow the
/// graph through round-trips.
struct MdpGraph {
  Digraph graph;
  StateSet player1;  // owner partition: member = player-1 state, rest random
  // probs[s] aligned with graph.succ[s]; empty vector = no weights for s.
  std::vector<std::vector<double>> probs;
  TargetSet target;

  uint32_t n() const { return graph.n; }
  uint64_t m() const { return graph.m; }
  bool is_player1(state_id s) const { return player1.test(s); }
};

struct ParseError : std::runtime_error {
  size_t line_num;
  ParseError(size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_num(line) {}
};

enum class ParseMode {
  Mdp,      // every state needs an outgoing edge
  Digraph,  // sinks allowed (SCC inputs)
};

MdpGraph parse_mdp(const std::string& text, ParseMode mode = ParseMode::Mdp);

/// One message per violated invariant; empty result means the graph is valid.
std::vector<std::string> validate(const MdpGraph& g);

/// Canonical text form: fixed directive order, ids ascending.
/// parse(serialize(g)) structurally equals g.
std::string serialize_mdp(const MdpGraph& g);

MdpGraph make_mdp(uint32_t n, const std::vector<state_id>& player1_states,
                  const std::vector<std::pair<state_id, state_id>>& edges,
                  const std::vector<state_id>& target);

/// The 4-state example used across the test suite.
MdpGraph m1_example();

}  // namespace qbuchi
