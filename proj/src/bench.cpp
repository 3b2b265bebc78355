#include "qbuchi/bench.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qbuchi/buchi_explicit.hpp"
#include "qbuchi/buchi_symbolic.hpp"
#include "qbuchi/scc.hpp"

namespace qbuchi {

const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names = {
      "classical",      "impr",      "win-lose", "impr-win-lose",
      "symb-classical", "symb-impr", "smdv",     "symb-impr-win-lose"};
  return names;
}

const std::vector<std::string>& scc_algo_names() {
  static const std::vector<std::string> names = {"scc-explicit", "scc-prior", "scc-improved"};
  return names;
}

BenchConfig parse_bench_config(const std::string& text) {
  BenchConfig c;
  std::istringstream in(text);
  std::string line;
  size_t line_num = 0;
  bool have_family = false;
  while (std::getline(in, line)) {
    ++line_num;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      std::istringstream probe(line);
      std::string tok;
      if (probe >> tok)
        throw std::runtime_error("config line " + std::to_string(line_num) + ": expected key = value");
      continue;
    }
    std::istringstream key_in(line.substr(0, eq)), val_in(line.substr(eq + 1));
    std::string key;
    key_in >> key;
    auto fail = [&](const std::string& msg) {
      throw std::runtime_error("config line " + std::to_string(line_num) + ": " + msg);
    };
    if (key == "family") {
      std::string v;
      val_in >> v;
      if (v == "mdp-random")
        c.family = GenKind::MdpRandom;
      else if (v == "mdp-perturbed")
        c.family = GenKind::MdpPerturbed;
      else if (v == "scc-layered")
        c.family = GenKind::SccLayered;
      else
        fail("unknown family '" + v + "'");
      have_family = true;
    } else if (key == "sizes") {
      uint32_t v;
      c.sizes.clear();
      while (val_in >> v) c.sizes.push_back(v);
    } else if (key == "seeds") {
      uint64_t v;
      c.seeds.clear();
      while (val_in >> v) c.seeds.push_back(v);
    } else if (key == "algos") {
      std::string v;
      c.algos.clear();
      while (val_in >> v) c.algos.push_back(v);
    } else if (key == "density") {
      val_in >> c.density;
    } else if (key == "target_fraction") {
      val_in >> c.target_fraction;
    } else if (key == "eps") {
      val_in >> c.eps;
    } else if (key == "layer_size") {
      val_in >> c.layer_size;
    } else if (key == "intra_extra") {
      val_in >> c.intra_extra;
    } else if (key == "inter_density") {
      val_in >> c.inter_density;
    } else if (key == "reps") {
      val_in >> c.reps;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!have_family) throw std::runtime_error("config: missing 'family'");
  if (c.sizes.empty()) throw std::runtime_error("config: no sizes");
  if (c.seeds.empty()) throw std::runtime_error("config: no seeds");
  if (c.algos.empty()) throw std::runtime_error("config: empty algorithm list");
  if (c.reps == 0) throw std::runtime_error("config: reps must be positive");

  const auto& valid = (c.family == GenKind::SccLayered) ? scc_algo_names() : solver_names();
  for (const auto& a : c.algos)
    if (std::find(valid.begin(), valid.end(), a) == valid.end())
      throw std::runtime_error("config: unknown algorithm '" + a + "' for this family");
  return c;
}

namespace {

struct RunResult {
  std::vector<state_id> result_ids;  // winning set or flattened partition id
  uint64_t result_size = 0;
  uint64_t result_hash = 0;
  StepLedger ledger;
};

uint64_t hash_partition(uint32_t n, const SccPartition& part) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 1099511628211ull;
    }
  };
  mix(n);
  for (const auto& comp : part.canonical()) {
    mix(comp.size());
    for (state_id s : comp) mix(s);
  }
  return h;
}

RunResult run_solver(const std::string& algo, const MdpGraph& g) {
  RunResult r;
  if (algo == "classical") {
    r.result_ids = classical_explicit(g, g.target).states;
  } else if (algo == "impr") {
    r.result_ids = impr_algo(g, g.target).states;
  } else if (algo == "win-lose") {
    VerdictStream vs;
    r.result_ids = win_lose(g, g.target, vs).states;
  } else if (algo == "impr-win-lose") {
    VerdictStream vs;
    r.result_ids = impr_win_lose(g, g.target, vs).states;
  } else if (algo == "symb-classical") {
    auto eng = make_engine(g);
    auto rep = symb_classical(g, g.target, *eng);
    r.result_ids = rep.winning.to_ids();
    r.ledger = rep.ledger;
  } else if (algo == "symb-impr") {
    auto eng = make_engine(g);
    auto rep = symb_impr_algo(g, g.target, *eng);
    r.result_ids = rep.winning.to_ids();
    r.ledger = rep.ledger;
  } else if (algo == "smdv") {
    auto eng = make_engine(g);
    auto rep = smdv_symb_impr_algo(g, g.target, *eng);
    r.result_ids = rep.winning.to_ids();
    r.ledger = rep.ledger;
  } else if (algo == "symb-impr-win-lose") {
    auto eng = make_engine(g);
    VerdictStream vs;
    auto rep = symb_impr_win_lose(g, g.target, *eng, vs);
    r.result_ids = rep.winning.to_ids();
    r.ledger = rep.ledger;
  } else {
    throw std::runtime_error("unknown solver '" + algo + "'");
  }
  r.result_size = r.result_ids.size();
  r.result_hash = hash_ids(g.n(), r.result_ids);
  return r;
}

RunResult run_scc_algo(const std::string& algo, const Digraph& g) {
  RunResult r;
  SccPartition part;
  if (algo == "scc-explicit") {
    part = scc_explicit(g);
  } else if (algo == "scc-prior") {
    auto eng = make_engine(g);
    part = scc_find(g, *eng);
    r.ledger = eng->ledger();
  } else if (algo == "scc-improved") {
    auto eng = make_engine(g);
    part = improved_scc_find(g, *eng);
    r.ledger = eng->ledger();
  } else {
    throw std::runtime_error("unknown scc algorithm '" + algo + "'");
  }
  r.result_size = part.count();
  r.result_hash = hash_partition(g.n, part);
  return r;
}

}  // namespace

std::string BenchReport::to_csv() const {
  std::ostringstream os;
  os << "graph_id,n,m,algorithm,image_steps,pre_steps,post_steps,cpre_steps,cpre1_steps,"
        "cardinality_ops,wall_time_us,result_size,result_hash\n";
  for (const auto& r : rows) {
    os << r.graph_id << ',' << r.n << ',' << r.m << ',' << r.algorithm << ','
       << r.ledger.image_steps() << ',' << r.ledger.pre_steps << ',' << r.ledger.post_steps << ','
       << r.ledger.cpre_steps << ',' << r.ledger.cpre1_steps << ',' << r.ledger.cardinality_ops
       << ',' << r.wall_time_us << ',' << r.result_size << ',' << std::hex << r.result_hash
       << std::dec << "\n";
  }
  return os.str();
}

std::string BenchReport::to_markdown() const {
  // means per (size, algorithm), column order = first appearance
  std::vector<std::string> algos;
  std::vector<uint32_t> sizes;
  std::map<std::pair<uint32_t, std::string>, std::pair<uint64_t, uint64_t>> acc;  // sum, count
  for (const auto& r : rows) {
    if (std::find(algos.begin(), algos.end(), r.algorithm) == algos.end())
      algos.push_back(r.algorithm);
    if (std::find(sizes.begin(), sizes.end(), r.n) == sizes.end()) sizes.push_back(r.n);
    auto& a = acc[{r.n, r.algorithm}];
    a.first += r.ledger.image_steps();
    a.second += 1;
  }
  std::sort(sizes.begin(), sizes.end());

  std::ostringstream os;
  os << "| Number of states |";
  for (const auto& a : algos) os << ' ' << a << " |";
  os << "\n|---|";
  for (size_t i = 0; i < algos.size(); ++i) os << "---|";
  os << "\n";
  for (uint32_t n : sizes) {
    os << "| " << n << " |";
    for (const auto& a : algos) {
      auto it = acc.find({n, a});
      if (it == acc.end() || it->second.second == 0)
        os << " - |";
      else
        os << ' ' << (it->second.first / it->second.second) << " |";
    }
    os << "\n";
  }
  return os.str();
}

BenchReport run_benchmark(const BenchConfig& config, uint32_t select_hard) {
  BenchReport report;
  struct InstanceSteps {
    std::string prefix;
    uint64_t total_steps = 0;
  };
  std::vector<InstanceSteps> instances;

  for (uint32_t n : config.sizes) {
    for (uint64_t seed : config.seeds) {
      GenParams p;
      p.n = n;
      p.seed = seed;
      p.density = config.density;
      p.target_fraction = config.target_fraction;
      p.intra_extra = config.intra_extra;
      p.inter_density = config.inter_density;

      std::ostringstream id;
      uint64_t instance_steps = 0;

      if (config.family == GenKind::SccLayered) {
        p.kind = GenKind::SccLayered;
        p.layers = std::max<uint32_t>(1, n / std::max<uint32_t>(1, config.layer_size));
        id << "scc-layered-n" << n << "-s" << seed;
        auto inst = gen_layered_scc_graph(p);
        uint64_t ref_hash = run_scc_algo("scc-explicit", inst.graph).result_hash;
        for (const auto& algo : config.algos) {
          BenchRow row;
          row.graph_id = id.str();
          row.n = n;
          row.m = inst.graph.m;
          row.algorithm = algo;
          uint64_t total_us = 0;
          RunResult rr;
          for (uint32_t rep = 0; rep < config.reps; ++rep) {
            auto start = std::chrono::steady_clock::now();
            rr = run_scc_algo(algo, inst.graph);
            auto end = std::chrono::steady_clock::now();
            total_us += std::chrono::duration_cast<std::chrono::microseconds>(end - start).count();
          }
          if (rr.result_hash != ref_hash)
            throw std::runtime_error("result divergence on " + row.graph_id + " / " + algo);
          row.ledger = rr.ledger;
          row.wall_time_us = total_us / config.reps;
          row.result_size = rr.result_size;
          row.result_hash = rr.result_hash;
          instance_steps += row.ledger.image_steps();
          report.rows.push_back(std::move(row));
        }
      } else {
        p.kind = GenKind::MdpRandom;
        MdpGraph g = gen_random_mdp(p);
        if (config.family == GenKind::MdpPerturbed) {
          g = perturb_mdp(g, config.eps, seed ^ 0x5eedu);
          id << "mdp-perturbed-n" << n << "-s" << seed;
        } else {
          id << "mdp-random-n" << n << "-s" << seed;
        }
        uint64_t ref_hash = run_solver("classical", g).result_hash;
        for (const auto& algo : config.algos) {
          BenchRow row;
          row.graph_id = id.str();
          row.n = n;
          row.m = g.m();
          row.algorithm = algo;
          uint64_t total_us = 0;
          RunResult rr;
          for (uint32_t rep = 0; rep < config.reps; ++rep) {
            auto start = std::chrono::steady_clock::now();
            rr = run_solver(algo, g);
            auto end = std::chrono::steady_clock::now();
            total_us += std::chrono::duration_cast<std::chrono::microseconds>(end - start).count();
          }
          if (rr.result_hash != ref_hash)
            throw std::runtime_error("result divergence on " + row.graph_id + " / " + algo);
          row.ledger = rr.ledger;
          row.wall_time_us = total_us / config.reps;
          row.result_size = rr.result_size;
          row.result_hash = rr.result_hash;
          instance_steps += row.ledger.image_steps();
          report.rows.push_back(std::move(row));
        }
      }
      instances.push_back({id.str(), instance_steps});
    }
  }

  if (select_hard > 0 && select_hard < instances.size()) {
    std::stable_sort(instances.begin(), instances.end(),
                     [](const auto& a, const auto& b) { return a.total_steps > b.total_steps; });
    instances.resize(select_hard);
    std::vector<BenchRow> kept;
    for (const auto& r : report.rows)
      for (const auto& inst : instances)
        if (r.graph_id == inst.prefix) {
          kept.push_back(r);
          break;
        }
    report.rows = std::move(kept);
  }
  return report;
}

}  // namespace qbuchi
