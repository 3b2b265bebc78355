#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qbuchi/engine.hpp"
#include "qbuchi/gen.hpp"

namespace qbuchi {

/// Flat key-value benchmark configuration. Grammar (one `key = value` per
/// line, `#` comments):
///   family = mdp-random | mdp-perturbed | scc-layered
///   sizes = 5000 10000 20000
///   seeds = 1 2 3
///   algos = classical symb-impr smdv symb-impr-win-lose
///   density = 4.0          (mdp families: mean out-degree)
///   target_fraction = 0.1
///   eps = 0.05             (mdp-perturbed)
///   layer_size = 100       (scc-layered)
///   intra_extra = 0.5
///   inter_density = 1.0
///   reps = 1
struct BenchConfig {
  GenKind family = GenKind::MdpRandom;
  std::vector<uint32_t> sizes;
  std::vector<uint64_t> seeds;
  std::vector<std::string> algos;
  double density = 4.0;
  double target_fraction = 0.1;
  double eps = 0.05;
  uint32_t layer_size = 100;
  double intra_extra = 0.5;
  double inter_density = 1.0;
  uint32_t reps = 1;
};

BenchConfig parse_bench_config(const std::string& text);

struct BenchRow {
  std::string graph_id;
  uint32_t n = 0;
  uint64_t m = 0;
  std::string algorithm;
  StepLedger ledger;
  uint64_t wall_time_us = 0;
  uint64_t result_size = 0;
  uint64_t result_hash = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string to_csv() const;
  /// Mean image steps per (size, algorithm), one row per size.
  std::string to_markdown() const;
};

/// Runs every configured algorithm on every instance with a fresh engine,
/// cross-checking result hashes within each instance against the explicit
/// reference solver. Throws std::runtime_error on divergence.
/// select_hard > 0 keeps only the instances with the highest total image
/// steps across algorithms.
BenchReport run_benchmark(const BenchConfig& config, uint32_t select_hard = 0);

/// Known algorithm names for `solve --algo` and bench configs.
const std::vector<std::string>& solver_names();
const std::vector<std::string>& scc_algo_names();

}  // namespace qbuchi
