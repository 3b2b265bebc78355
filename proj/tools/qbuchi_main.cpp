#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbuchi/bench.hpp"
#include "qbuchi/buchi_explicit.hpp"
#include "qbuchi/buchi_symbolic.hpp"
#include "qbuchi/gen.hpp"
#include "qbuchi/mdp.hpp"
#include "qbuchi/scc.hpp"

using namespace qbuchi;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // divergence / validation / bound violation
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

void print_ledger(const StepLedger& l) {
  std::cout << "image_steps " << l.image_steps() << "\n"
            << "pre_steps " << l.pre_steps << "\n"
            << "post_steps " << l.post_steps << "\n"
            << "cpre_steps " << l.cpre_steps << "\n"
            << "cpre1_steps " << l.cpre1_steps << "\n"
            << "cardinality_ops " << l.cardinality_ops << "\n";
}

void print_ids(const std::vector<state_id>& ids) {
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << ids[i];
  }
  std::cout << "\n";
}

int cmd_solve(const std::string& file, const std::string& algo, bool stream, bool ledger) {
  MdpGraph g = parse_mdp(read_file(file));
  bool is_winlose = algo == "win-lose" || algo == "impr-win-lose" || algo == "symb-impr-win-lose";
  bool is_symbolic = algo.rfind("symb", 0) == 0 || algo == "smdv";
  if (stream && !is_winlose) {
    std::cerr << "--stream requires a win-lose family algorithm\n";
    return kExitUsage;
  }
  if (ledger && !is_symbolic) {
    std::cerr << "--ledger requires a symbolic algorithm\n";
    return kExitUsage;
  }

  std::vector<state_id> winning;
  VerdictStream vs;
  StepLedger led;
  if (algo == "classical") {
    winning = classical_explicit(g, g.target).states;
  } else if (algo == "impr") {
    winning = impr_algo(g, g.target).states;
  } else if (algo == "win-lose") {
    winning = win_lose(g, g.target, vs).states;
  } else if (algo == "impr-win-lose") {
    winning = impr_win_lose(g, g.target, vs).states;
  } else if (algo == "symb-classical") {
    auto eng = make_engine(g);
    auto rep = symb_classical(g, g.target, *eng);
    winning = rep.winning.to_ids();
    led = rep.ledger;
  } else if (algo == "symb-impr") {
    auto eng = make_engine(g);
    auto rep = symb_impr_algo(g, g.target, *eng);
    winning = rep.winning.to_ids();
    led = rep.ledger;
  } else if (algo == "smdv") {
    auto eng = make_engine(g);
    auto rep = smdv_symb_impr_algo(g, g.target, *eng);
    winning = rep.winning.to_ids();
    led = rep.ledger;
  } else if (algo == "symb-impr-win-lose") {
    auto eng = make_engine(g);
    auto rep = symb_impr_win_lose(g, g.target, *eng, vs);
    winning = rep.winning.to_ids();
    led = rep.ledger;
  } else if (algo == "oracle") {
    winning = oracle_almost_sure(g, g.target).states;
  } else {
    std::cerr << "unknown algorithm '" << algo << "'\n";
    return kExitUsage;
  }

  print_ids(winning);
  if (stream) std::cout << vs.to_jsonl();
  if (ledger) print_ledger(led);
  return kExitOk;
}

int cmd_scc(const std::string& file, const std::string& algo, bool audit) {
  MdpGraph wrapped = parse_mdp(read_file(file), ParseMode::Digraph);
  const Digraph& g = wrapped.graph;

  SccPartition part;
  StepLedger led;
  if (algo == "explicit") {
    part = scc_explicit(g);
  } else if (algo == "prior") {
    auto eng = make_engine(g);
    part = scc_find(g, *eng);
    led = eng->ledger();
  } else if (algo == "improved") {
    auto eng = make_engine(g);
    part = improved_scc_find(g, *eng);
    led = eng->ledger();
  } else {
    std::cerr << "unknown scc algorithm '" << algo << "'\n";
    return kExitUsage;
  }
  scc_diameters(part, g);

  nlohmann::json out;
  out["n"] = g.n;
  out["scc_count"] = part.count();
  out["sccs"] = part.sccs;
  out["is_bottom"] = std::vector<bool>(part.is_bottom.begin(), part.is_bottom.end());
  out["diameters"] = part.diameter;
  auto ds = part.d_star();
  if (ds) out["d_star"] = *ds;

  int rc = kExitOk;
  if (audit && algo != "explicit") {
    // Partition equivalence plus the step bounds with confirmation slack.
    auto oracle = scc_explicit(g);
    bool equal = oracle.canonical() == part.canonical();
    uint64_t steps = led.image_steps();
    uint64_t nn = g.n, cnt = part.count();
    uint64_t bound = (algo == "prior") ? 5 * nn + 3 * cnt + 3 : 3 * nn + cnt + 3 * cnt + 3;
    bool within = steps <= bound;
    if (algo == "improved" && ds) {
      uint64_t alt = 5 * *ds + cnt + 3 * cnt + 3;
      within = steps <= std::min(bound, alt);
      out["bound"] = std::min(bound, alt);
    } else {
      out["bound"] = bound;
    }
    out["image_steps"] = steps;
    out["partition_matches_explicit"] = equal;
    out["within_bound"] = within;
    if (!equal || !within) rc = kExitFailure;
  } else if (algo != "explicit") {
    out["image_steps"] = led.image_steps();
  }

  std::cout << out.dump(2) << "\n";
  return rc;
}

int cmd_verify(const std::string& file) {
  MdpGraph g = parse_mdp(read_file(file));
  struct Run {
    std::string name;
    std::vector<state_id> states;
  };
  std::vector<Run> runs;
  runs.push_back({"classical", classical_explicit(g, g.target).states});
  runs.push_back({"impr", impr_algo(g, g.target).states});
  {
    VerdictStream vs;
    runs.push_back({"win-lose", win_lose(g, g.target, vs).states});
  }
  {
    VerdictStream vs;
    runs.push_back({"impr-win-lose", impr_win_lose(g, g.target, vs).states});
  }
  {
    auto eng = make_engine(g);
    runs.push_back({"symb-classical", symb_classical(g, g.target, *eng).winning.to_ids()});
  }
  {
    auto eng = make_engine(g);
    runs.push_back({"symb-impr", symb_impr_algo(g, g.target, *eng).winning.to_ids()});
  }
  {
    auto eng = make_engine(g);
    runs.push_back({"smdv", smdv_symb_impr_algo(g, g.target, *eng).winning.to_ids()});
  }
  {
    auto eng = make_engine(g);
    VerdictStream vs;
    runs.push_back({"symb-impr-win-lose", symb_impr_win_lose(g, g.target, *eng, vs).winning.to_ids()});
  }

  bool agree = true;
  for (const auto& r : runs)
    if (r.states != runs.front().states) {
      agree = false;
      std::cerr << "divergence: " << r.name << " disagrees with classical\n";
    }

  bool oracle_ran = false;
  if (oracle_feasible(g)) {
    oracle_ran = true;
    auto w = oracle_almost_sure(g, g.target);
    if (w.states != runs.front().states) {
      agree = false;
      std::cerr << "divergence: oracle disagrees with classical\n";
    }
  }

  if (!agree) return kExitFailure;
  std::cout << runs.size() << " solvers" << (oracle_ran ? " + oracle" : "") << " agree\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qualitative Buchi analysis of MDPs: almost-sure winning sets and symbolic SCC decomposition"};
  app.require_subcommand(1);

  // solve
  std::string solve_file, solve_algo;
  bool solve_stream = false, solve_ledger = false;
  auto* solve = app.add_subcommand("solve", "compute the almost-sure winning set");
  solve->add_option("file", solve_file, "MDP instance file")->required();
  solve->add_option("--algo", solve_algo, "algorithm")->required();
  solve->add_flag("--stream", solve_stream, "print verdict events as JSON lines");
  solve->add_flag("--ledger", solve_ledger, "print the symbolic step ledger");

  // scc
  std::string scc_file, scc_algo = "improved";
  bool scc_audit = false;
  auto* scc = app.add_subcommand("scc", "decompose a digraph into SCCs");
  scc->add_option("file", scc_file, "digraph file")->required();
  scc->add_option("--algo", scc_algo, "explicit | prior | improved");
  scc->add_flag("--audit-bounds", scc_audit, "check step bounds and partition equality");

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  GenParams gp;
  std::string gen_out, gen_in;
  auto* gen_mdp = gen->add_subcommand("mdp", "random MDP");
  gen_mdp->add_option("--n", gp.n)->required();
  gen_mdp->add_option("--density", gp.density);
  gen_mdp->add_option("--target-fraction", gp.target_fraction);
  gen_mdp->add_option("--seed", gp.seed);
  gen_mdp->add_option("-o,--out", gen_out)->required();
  auto* gen_pert = gen->add_subcommand("perturb", "rewire an existing MDP");
  gen_pert->add_option("--in", gen_in)->required();
  gen_pert->add_option("--eps", gp.eps)->required();
  gen_pert->add_option("--seed", gp.seed);
  gen_pert->add_option("-o,--out", gen_out)->required();
  auto* gen_lay = gen->add_subcommand("layered", "layered SCC digraph");
  gen_lay->add_option("--n", gp.n)->required();
  gen_lay->add_option("--layers", gp.layers)->required();
  gen_lay->add_option("--intra-extra", gp.intra_extra);
  gen_lay->add_option("--inter-density", gp.inter_density);
  gen_lay->add_option("--seed", gp.seed);
  gen_lay->add_option("-o,--out", gen_out)->required();

  // bench
  std::string bench_config, bench_out;
  uint32_t select_hard = 0;
  auto* bench = app.add_subcommand("bench", "run the benchmark harness");
  bench->add_option("config", bench_config, "config file")->required();
  bench->add_option("-o,--out", bench_out, "output directory")->required();
  bench->add_option("--select-hard", select_hard, "keep only the k hardest instances");

  // verify
  std::string verify_file;
  auto* verify = app.add_subcommand("verify", "run all solvers and the oracle, check agreement");
  verify->add_option("file", verify_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_file, solve_algo, solve_stream, solve_ledger);
    if (*scc) return cmd_scc(scc_file, scc_algo, scc_audit);
    if (*verify) return cmd_verify(verify_file);
    if (*gen) {
      if (*gen_mdp) {
        gp.kind = GenKind::MdpRandom;
        write_file(gen_out, serialize_mdp(gen_random_mdp(gp)));
      } else if (*gen_pert) {
        MdpGraph g = parse_mdp(read_file(gen_in));
        write_file(gen_out, serialize_mdp(perturb_mdp(g, gp.eps, gp.seed)));
      } else {
        gp.kind = GenKind::SccLayered;
        auto lg = gen_layered_scc_graph(gp);
        MdpGraph wrap;
        wrap.graph = std::move(lg.graph);
        wrap.player1 = StateSet(wrap.graph.n);
        write_file(gen_out, serialize_mdp(wrap));
      }
      return kExitOk;
    }
    if (*bench) {
      BenchConfig cfg = parse_bench_config(read_file(bench_config));
      BenchReport report = run_benchmark(cfg, select_hard);
      std::filesystem::create_directories(bench_out);
      write_file(bench_out + "/report.csv", report.to_csv());
      write_file(bench_out + "/report.md", report.to_markdown());
      std::cout << "wrote " << report.rows.size() << " rows to " << bench_out << "\n";
      std::cout << report.to_markdown();
      return kExitOk;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
