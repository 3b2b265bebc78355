#include "qbuchi/mdp.hpp"

#include <vector>

#include "doctest.h"
#include "qbuchi/gen.hpp"

using namespace qbuchi;

TEST_CASE("parse smallest legal instance") {
  auto g = parse_mdp("states 1\nplayer1 0\nedge 0 0\ntarget 0\n");
  CHECK(g.n() == 1);
  CHECK(g.m() == 1);
  CHECK(g.is_player1(0));
  CHECK(g.graph.succ[0] == std::vector<state_id>{0});
  CHECK(g.target.ids == std::vector<state_id>{0});
}

TEST_CASE("M1 parse round-trip") {
  auto m1 = m1_example();
  auto text = serialize_mdp(m1);
  auto back = parse_mdp(text);
  CHECK(back.graph.succ == m1.graph.succ);
  CHECK(back.graph.pred == m1.graph.pred);
  CHECK(back.player1 == m1.player1);
  CHECK(back.target.ids == m1.target.ids);
  CHECK(serialize_mdp(back) == text);  // canonical form is a fixpoint
}

TEST_CASE("serialize is deterministic and canonical") {
  auto m1 = m1_example();
  CHECK(serialize_mdp(m1) == serialize_mdp(m1));
  CHECK(serialize_mdp(parse_mdp("states 1\nplayer1 0\nedge 0 0\ntarget 0\n")) ==
        "states 1\nplayer1 0\nedge 0 0\ntarget 0\n");
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_mdp("states 2\nedge 0 1\nedge 1 1\nedge 0 1\n"), ParseError);  // duplicate
  CHECK_THROWS_AS(parse_mdp("states 2\nedge 0 5\nedge 1 1\n"), ParseError);  // out of range
  CHECK_THROWS_AS(parse_mdp("states 2\nedge 0 1\n"), ParseError);            // sink state 1
  CHECK_THROWS_AS(parse_mdp("bogus 1\n"), ParseError);
  CHECK_THROWS_AS(parse_mdp("states 2\nplayer1 0\nedge 0 1 0.5\nedge 1 1\n"), ParseError);
  // line numbers are reported
  try {
    parse_mdp("states 2\nedge 0 1\nedge 0 9\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line_num == 3);
  }
}

TEST_CASE("sink state reported by validate") {
  auto g = make_mdp(2, {}, {{0, 1}}, {});
  auto errs = validate(g);
  REQUIRE(!errs.empty());
  CHECK(errs[0].find("sink state") != std::string::npos);
}

TEST_CASE("probability sum rule") {
  auto g = parse_mdp("states 2\nedge 0 0 0.5\nedge 0 1 0.5\nedge 1 1\n");
  CHECK(validate(g).empty());

  g.probs[0] = {0.5, 0.4};
  auto errs = validate(g);
  REQUIRE(!errs.empty());
  CHECK(errs[0].find("probabilities sum 0.9") != std::string::npos);
}

TEST_CASE("probabilities survive round-trips") {
  auto g = parse_mdp("states 2\nedge 0 0 0.25\nedge 0 1 0.75\nedge 1 1\n");
  auto back = parse_mdp(serialize_mdp(g));
  CHECK(back.probs == g.probs);
}

TEST_CASE("transpose corruption detected") {
  auto g = m1_example();
  g.graph.pred[0].push_back(3);
  auto errs = validate(g);
  REQUIRE(!errs.empty());
  CHECK(errs[0].find("transpose mismatch") != std::string::npos);
}

TEST_CASE("m equals sum of out-degrees and in-degrees") {
  GenParams p;
  p.n = 60;
  p.density = 3.0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    auto g = gen_random_mdp(p);
    uint64_t out = 0, in = 0;
    for (uint32_t s = 0; s < g.n(); ++s) {
      out += g.graph.succ[s].size();
      in += g.graph.pred[s].size();
    }
    CHECK(out == g.m());
    CHECK(in == g.m());
  }
}

TEST_CASE("parse(serialize(g)) identity over generated instances") {
  GenParams p;
  p.n = 40;
  p.density = 2.5;
  p.target_fraction = 0.2;
  for (uint64_t seed = 100; seed < 120; ++seed) {
    p.seed = seed;
    auto g = gen_random_mdp(p);
    auto back = parse_mdp(serialize_mdp(g));
    CHECK(back.graph.succ == g.graph.succ);
    CHECK(back.graph.pred == g.graph.pred);
    CHECK(back.player1 == g.player1);
    CHECK(back.target.ids == g.target.ids);
  }
}

TEST_CASE("digraph mode allows sinks") {
  auto g = parse_mdp("states 2\nedge 0 1\n", ParseMode::Digraph);
  CHECK(g.n() == 2);
  CHECK(g.graph.succ[1].empty());
}
