#include "qbuchi/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qbuchi {

Digraph Digraph::from_edges(uint32_t n, const std::vector<std::pair<state_id, state_id>>& edges) {
  Digraph g;
  g.n = n;
  g.m = edges.size();
  g.succ.assign(n, {});
  g.pred.assign(n, {});
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint out of range");
    g.succ[u].push_back(v);
    g.pred[v].push_back(u);
  }
  for (auto& l : g.succ) std::sort(l.begin(), l.end());
  for (auto& l : g.pred) std::sort(l.begin(), l.end());
  return g;
}

bool TargetSet::contains(state_id s) const {
  return std::binary_search(ids.begin(), ids.end(), s);
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

state_id parse_id(const std::string& tok, uint32_t n, size_t line) {
  size_t pos = 0;
  unsigned long v;
  try {
    v = std::stoul(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "expected state id, got '" + tok + "'");
  }
  if (pos != tok.size()) throw ParseError(line, "expected state id, got '" + tok + "'");
  if (v >= n) throw ParseError(line, "state id " + tok + " out of range (states " + std::to_string(n) + ")");
  return static_cast<state_id>(v);
}

}  // namespace

MdpGraph parse_mdp(const std::string& text, ParseMode mode) {
  std::istringstream in(text);
  std::string line;
  size_t line_num = 0;

  bool have_states = false;
  uint32_t n = 0;
  std::vector<state_id> p1;
  std::vector<std::pair<state_id, state_id>> edges;
  std::vector<std::pair<size_t, double>> edge_probs;  // parallel to edges: (line, prob or NaN)
  std::set<state_id> targets;
  std::set<std::pair<state_id, state_id>> seen_edges;

  while (std::getline(in, line)) {
    ++line_num;
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "states") {
      if (have_states) throw ParseError(line_num, "duplicate 'states' directive");
      if (toks.size() != 2) throw ParseError(line_num, "'states' takes one argument");
      try {
        n = static_cast<uint32_t>(std::stoul(toks[1]));
      } catch (const std::exception&) {
        throw ParseError(line_num, "bad state count '" + toks[1] + "'");
      }
      if (n == 0) throw ParseError(line_num, "state count must be positive");
      have_states = true;
    } else if (kw == "player1") {
      if (!have_states) throw ParseError(line_num, "'player1' before 'states'");
      for (size_t i = 1; i < toks.size(); ++i) p1.push_back(parse_id(toks[i], n, line_num));
    } else if (kw == "edge") {
      if (!have_states) throw ParseError(line_num, "'edge' before 'states'");
      if (toks.size() != 3 && toks.size() != 4)
        throw ParseError(line_num, "'edge' takes 2 or 3 arguments");
      state_id u = parse_id(toks[1], n, line_num);
      state_id v = parse_id(toks[2], n, line_num);
      if (!seen_edges.insert({u, v}).second)
        throw ParseError(line_num, "duplicate edge " + toks[1] + " -> " + toks[2]);
      double prob = std::nan("");
      if (toks.size() == 4) {
        try {
          prob = std::stod(toks[3]);
        } catch (const std::exception&) {
          throw ParseError(line_num, "bad probability '" + toks[3] + "'");
        }
      }
      edges.push_back({u, v});
      edge_probs.push_back({line_num, prob});
    } else if (kw == "target") {
      if (!have_states) throw ParseError(line_num, "'target' before 'states'");
      for (size_t i = 1; i < toks.size(); ++i) targets.insert(parse_id(toks[i], n, line_num));
    } else {
      throw ParseError(line_num, "unknown directive '" + kw + "'");
    }
  }
  if (!have_states) throw ParseError(line_num, "missing 'states' directive");

  MdpGraph g;
  g.player1 = StateSet(n);
  for (state_id s : p1) g.player1.set(s);

  // Probabilities are legal only on random-state edges.
  bool any_prob = false;
  for (size_t i = 0; i < edges.size(); ++i) {
    if (!std::isnan(edge_probs[i].second)) {
      any_prob = true;
      if (g.player1.test(edges[i].first))
        throw ParseError(edge_probs[i].first,
                         "probability on player-1 edge " + std::to_string(edges[i].first));
    }
  }

  g.graph = Digraph::from_edges(n, edges);
  g.target.ids.assign(targets.begin(), targets.end());

  if (any_prob) {
    g.probs.assign(n, {});
    // Re-associate probs with the sorted successor lists.
    std::vector<std::vector<std::pair<state_id, double>>> by_state(n);
    for (size_t i = 0; i < edges.size(); ++i)
      if (!std::isnan(edge_probs[i].second))
        by_state[edges[i].first].push_back({edges[i].second, edge_probs[i].second});
    for (uint32_t s = 0; s < n; ++s) {
      if (by_state[s].empty()) continue;
      std::sort(by_state[s].begin(), by_state[s].end());
      g.probs[s].assign(g.graph.succ[s].size(), std::nan(""));
      for (auto [v, p] : by_state[s]) {
        auto it = std::lower_bound(g.graph.succ[s].begin(), g.graph.succ[s].end(), v);
        g.probs[s][it - g.graph.succ[s].begin()] = p;
      }
    }
  }

  if (mode == ParseMode::Mdp) {
    auto errs = validate(g);
    if (!errs.empty()) throw ParseError(0, errs.front());
  }
  return g;
}

std::vector<std::string> validate(const MdpGraph& g) {
  std::vector<std::string> errs;
  const Digraph& d = g.graph;
  if (d.succ.size() != d.n || d.pred.size() != d.n) {
    errs.push_back("adjacency list size does not match state count");
    return errs;
  }

  uint64_t out_sum = 0;
  for (uint32_t s = 0; s < d.n; ++s) {
    if (d.succ[s].empty()) errs.push_back("sink state " + std::to_string(s) + " has no outgoing edge");
    out_sum += d.succ[s].size();
    for (size_t i = 0; i + 1 < d.succ[s].size(); ++i)
      if (d.succ[s][i] == d.succ[s][i + 1])
        errs.push_back("duplicate edge " + std::to_string(s) + " -> " + std::to_string(d.succ[s][i]));
  }
  if (out_sum != d.m) errs.push_back("edge count m does not match sum of out-degrees");

  // pred must be the exact transpose of succ.
  std::vector<std::vector<state_id>> tr(d.n);
  for (uint32_t s = 0; s < d.n; ++s)
    for (state_id v : d.succ[s]) tr[v].push_back(s);
  for (auto& l : tr) std::sort(l.begin(), l.end());
  for (uint32_t s = 0; s < d.n; ++s)
    if (tr[s] != d.pred[s]) {
      errs.push_back("transpose mismatch at state " + std::to_string(s));
      break;
    }

  for (state_id t : g.target.ids)
    if (t >= d.n) errs.push_back("target id " + std::to_string(t) + " out of range");

  if (!g.probs.empty()) {
    for (uint32_t s = 0; s < d.n && s < g.probs.size(); ++s) {
      if (g.probs[s].empty()) continue;
      if (g.player1.test(s)) {
        errs.push_back("probabilities on player-1 state " + std::to_string(s));
        continue;
      }
      if (g.probs[s].size() != d.succ[s].size()) {
        errs.push_back("probabilities incomplete on state " + std::to_string(s));
        continue;
      }
      double sum = 0;
      bool bad = false;
      for (double p : g.probs[s]) {
        if (std::isnan(p)) {
          errs.push_back("probabilities incomplete on state " + std::to_string(s));
          bad = true;
          break;
        }
        if (p <= 0) {
          errs.push_back("non-positive probability on state " + std::to_string(s));
          bad = true;
          break;
        }
        sum += p;
      }
      if (!bad && std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "probabilities sum " << sum << " on state " << s;
        errs.push_back(os.str());
      }
    }
  }
  return errs;
}

std::string serialize_mdp(const MdpGraph& g) {
  std::ostringstream out;
  out << "states " << g.graph.n << "\n";
  auto p1 = g.player1.to_ids();
  if (!p1.empty()) {
    out << "player1";
    for (state_id s : p1) out << ' ' << s;
    out << "\n";
  }
  for (uint32_t s = 0; s < g.graph.n; ++s) {
    for (size_t i = 0; i < g.graph.succ[s].size(); ++i) {
      out << "edge " << s << ' ' << g.graph.succ[s][i];
      if (s < g.probs.size() && !g.probs[s].empty()) {
        std::ostringstream p;
        p.precision(17);
        p << g.probs[s][i];
        out << ' ' << p.str();
      }
      out << "\n";
    }
  }
  if (!g.target.ids.empty()) {
    out << "target";
    for (state_id t : g.target.ids) out << ' ' << t;
    out << "\n";
  }
  return out.str();
}

MdpGraph make_mdp(uint32_t n, const std::vector<state_id>& player1_states,
                  const std::vector<std::pair<state_id, state_id>>& edges,
                  const std::vector<state_id>& target) {
  MdpGraph g;
  g.graph = Digraph::from_edges(n, edges);
  g.player1 = StateSet(n);
  for (state_id s : player1_states) g.player1.set(s);
  g.target.ids = target;
  std::sort(g.target.ids.begin(), g.target.ids.end());
  g.target.ids.erase(std::unique(g.target.ids.begin(), g.target.ids.end()), g.target.ids.end());
  return g;
}

MdpGraph m1_example() {
  return make_mdp(4, {0, 2}, {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 2}, {3, 3}}, {2});
}

}  // namespace qbuchi
